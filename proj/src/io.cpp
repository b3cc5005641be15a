#include "hw/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace hw {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string item(text.substr(pos, comma - pos));
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        item = first == std::string::npos ? std::string() : item.substr(first, last - first + 1);
        if (item.empty()) {
            if (text.find_first_not_of(" \t") == std::string_view::npos) return out;
            throw DomainError("empty entry in list '" + std::string(text) + "'");
        }
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size() || !std::isfinite(v))
            throw DomainError("not a number: '" + item + "'");
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

std::vector<double> linspace(double first, double last, std::size_t n) {
    if (n < 2) throw DomainError("a grid needs at least two points");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = first + (last - first) * double(i) / double(n - 1);
    out.back() = last;
    return out;
}

std::vector<double> logspace(double first, double last, std::size_t n) {
    require_positive(first, "log grid start");
    require_positive(last, "log grid end");
    std::vector<double> out = linspace(std::log(first), std::log(last), n);
    for (double& v : out) v = std::exp(v);
    out.front() = first;
    out.back() = last;
    return out;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepCell> cells) {
    os << "rho,tau,delta,bound_ratio\n";
    for (const SweepCell& c : cells) {
        if (!c.delta) continue;
        os << format_number(c.rho) << ',' << format_number(c.tau) << ',' << format_number(*c.delta) << ','
           << format_number(*c.bound_ratio) << '\n';
    }
}

void write_bound_csv(std::ostream& os, std::span<const BoundCheckRow> rows) {
    const auto flag = [](bool b) { return b ? "true" : "false"; };
    os << "rho,t,vartheta,bound_simple,bound_strong,pass_simple,pass_adjusted,pass_strong\n";
    for (const BoundCheckRow& r : rows) {
        if (!r.vartheta) continue;
        os << format_number(r.rho) << ',' << format_number(r.t) << ',' << format_number(*r.vartheta) << ','
           << format_number(r.bound_simple) << ',' << format_number(r.bound_strong) << ',' << flag(r.pass_simple)
           << ',' << flag(r.pass_adjusted) << ',' << flag(r.pass_strong) << '\n';
    }
}

void write_delta_prime_csv(std::ostream& os, std::span<const DeltaPrimeRow> rows) {
    os << "rho,delta_prime0\n";
    for (const DeltaPrimeRow& r : rows) os << format_number(r.rho) << ',' << format_number(r.delta_prime0) << '\n';
}

}  // namespace hw
