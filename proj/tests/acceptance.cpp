// Acceptance checks. `acceptance N` runs criterion N, no argument runs all nine.
// One "CRITERION N: PASS|FAIL  detail" line per criterion; exit status 1 if any failed.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "hw/bounds.hpp"
#include "hw/cli.hpp"
#include "hw/io.hpp"
#include "hw/path.hpp"
#include "hw/quadrature.hpp"
#include "hw/saddle.hpp"
#include "hw/series.hpp"

using namespace hw;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += "[fail] " + what + "; ";
        } else {
            detail += what + "; ";
        }
    }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome criterion1() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const char* argv[] = {"hwtheta", "series", "--order", "6"};
    std::ostringstream out, err;
    const int code = run_cli(4, argv, out, err);
    const double secs = seconds_since(t0);
    o.check(code == 0, "exit code " + std::to_string(code));

    // reference values of the Im g coefficients
    const std::vector<std::string> expected = {
        "tau^(-1/2)  3/sqrt(6)",
        "tau^(1/2)  -3/(35*sqrt(6))",
        "tau^(3/2)  7/(2750*sqrt(6))",
        "tau^(5/2)  -44081/(656906250*sqrt(6))",
        "tau^(7/2)  1495665023/(1039685521875000*sqrt(6))",
        "tau^(9/2)  -96439937879/(5734608285656250000*sqrt(6))",
    };
    std::vector<std::string> lines;
    std::istringstream in(out.str());
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    for (const auto& e : expected) {
        const bool found = std::find(lines.begin(), lines.end(), e) != lines.end();
        std::string got;
        if (!found) {
            const std::string key = e.substr(0, e.find("  "));
            for (const auto& l : lines)
                if (l.rfind(key + "  ", 0) == 0) {
                    got = l.substr(key.size() + 2);
                    break;
                }
        }
        o.check(found, found ? e : e + " (got " + got + ")");
    }
    o.check(secs < 1.0, fmt("runtime %.3f s", secs));
    return o;
}

Outcome criterion2() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const ThetaSeries s = theta_series_rho1(6);
    const double secs = seconds_since(t0);
    // reference values of c_0 .. c_5
    const std::vector<Rational> expected = {
        Rational(1),
        Rational(-1, 70),
        Rational(7, 11000),
        Rational(-44081, 1051050000),
        Rational(1495665023) / Rational(475284810000000LL),
        Rational(-96439937879LL) / Rational(582563381400000000LL),
    };
    o.check(s.coeffs.size() == expected.size(), "six coefficients");
    for (std::size_t k = 0; k < expected.size() && k < s.coeffs.size(); ++k)
        o.check(s.coeffs[k] == expected[k],
                "c" + std::to_string(k) + " = " + to_string(s.coeffs[k]) +
                    (s.coeffs[k] == expected[k] ? "" : " (expected " + to_string(expected[k]) + ")"));
    o.check(secs < 1.0, fmt("runtime %.3f s", secs));
    return o;
}

Outcome criterion3() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const double d1 = delta_prime_at_zero(Rho(1.0));
    const double d2 = delta_second_at_zero(Rho(1.0));
    const double secs = seconds_since(t0);
    o.check(std::abs(d1 + 1.0 / 35.0) <= 1e-6, fmt("delta'(0,1) = %.12g, error %.2e", d1, std::abs(d1 + 1.0 / 35.0)));
    o.check(std::abs(d2 - 7.0 / 4125.0) <= 1e-4,
            fmt("delta''(0,1) = %.12g, error %.2e", d2, std::abs(d2 - 7.0 / 4125.0)));
    o.check(secs < 10.0, fmt("runtime %.2f s", secs));
    return o;
}

Outcome criterion4() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const ThetaSeries s = theta_series_rho1(6);
    PrecisionConfig cfg;
    cfg.max_bits = 512;
    for (double t : {0.1, 0.25, 0.5}) {
        const EvalResult r = theta_direct(1.0 / t, t, cfg);
        const double dev = std::abs(r.theta / s.evaluate(t, 5) - 1.0);
        const double sixth = s.term(5, t);
        o.check(dev <= 2.0 * sixth && r.precision_used_bits <= 512,
                fmt("t=%g: |ratio-1| = %.3e vs 2*|c5 t^5| = %.3e", t, dev, 2.0 * sixth) + ", " +
                    std::to_string(r.precision_used_bits) + " bits");
    }
    const double secs = seconds_since(t0);
    o.check(secs < 60.0, fmt("runtime %.2f s", secs));
    return o;
}

Outcome criterion5() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> rhos = {0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0};
    const std::vector<double> ts = {0.05, 0.1, 0.2};
    const auto rows = check_bound(rhos, ts);
    double worst = 0.0;
    std::size_t strict = 0, allowed = 0;
    for (const auto& r : rows) {
        if (!r.vartheta) {
            o.check(false, fmt("rho=%g t=%g", r.rho, r.t) + ": " + r.error);
            continue;
        }
        const double ratio = std::abs(*r.vartheta) / (r.t / 70.0);
        worst = std::max(worst, ratio);
        allowed += ratio <= 1.15;
        strict += r.pass_simple;
    }
    o.check(allowed == rows.size(), std::to_string(allowed) + "/" + std::to_string(rows.size()) +
                                        " cells within 1.15 t/70");
    o.detail += "strict |vartheta| <= t/70 in " + std::to_string(strict) + "/" + std::to_string(rows.size()) +
                " cells; max |vartheta|/(t/70) = " + fmt("%.6f", worst) + "; ";
    const double secs = seconds_since(t0);
    o.check(secs < 300.0, fmt("runtime %.1f s", secs));
    return o;
}

Outcome criterion6() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> rhos = logspace(0.05, 10.0, 25);
    std::vector<double> taus(200);
    for (std::size_t i = 0; i < taus.size(); ++i) taus[i] = 50.0 * double(i + 1) / double(taus.size());
    const auto cells = sweep_delta(rhos, taus);
    double worst = 0.0, worst_rho = 0.0, worst_tau = 0.0;
    std::size_t missing = 0;
    for (const auto& c : cells) {
        if (!c.bound_ratio) {
            ++missing;
            continue;
        }
        if (*c.bound_ratio > worst) {
            worst = *c.bound_ratio;
            worst_rho = c.rho;
            worst_tau = c.tau;
        }
    }
    o.check(missing == 0, std::to_string(cells.size() - missing) + "/" + std::to_string(cells.size()) + " cells traced");
    o.check(worst <= 1.0 + 1e-3,
            fmt("max |delta|/min(tau/35,1) = %.9f at rho=%g tau=%g", worst, worst_rho, worst_tau));
    const double secs = seconds_since(t0);
    o.check(secs < 300.0, fmt("runtime %.1f s", secs));
    return o;
}

Outcome criterion7() {
    Outcome o;
    const std::vector<double> taus = {1e3, 1e4, 1e5};
    const std::vector<double> d = delta_on_grid(Rho(1.0), taus);
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double tau = taus[i];
        const double err = std::abs(d[i] - delta_large_tau(tau));
        const double cap = 10.0 * std::pow(tau, -1.5) * std::log(2.0 * tau);
        o.check(err <= cap && err < previous, fmt("tau=%g: error %.3e, cap %.3e", tau, err, cap));
        previous = err;
    }
    return o;
}

// Ei_{-1/2}(z) = int_1^inf e^{-z u} sqrt(u) du by adaptive Gauss-Kronrod.
double ei_half_oracle(double z) {
    auto f = [z](double u) { return std::exp(-z * u) * std::sqrt(u); };
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, 1.0, std::numeric_limits<double>::infinity(), 20, 1e-15, &err);
}

Outcome criterion8() {
    Outcome o;
    for (double t : {0.1, 1.0, 10.0}) {
        const double ratio = vartheta_max(t) / (t / 70.0);
        o.check(ratio >= 0.99 && ratio <= 1.0, fmt("vartheta_max(%g)/(t/70) = %.6f", t, ratio));
    }
    const double big = vartheta_max(1e6);
    o.check(big >= 0.99 && big <= 1.0, fmt("vartheta_max(1e6) = %.6f", big));
    for (double z : {0.5, 1.0, 5.0}) {
        const double a = ei_half(z), b = ei_half_oracle(z);
        o.check(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)),
                fmt("ei_half(%g) = %.15g, oracle diff %.2e", z, a, std::abs(a - b)));
    }
    return o;
}

Outcome criterion9() {
    Outcome o;
    const std::vector<double> rhos = {0.05, 0.1, 0.25, 0.5, 0.9, 0.99, 1.0, 1.01, 1.1, 2.0, 4.0, 10.0};

    double saddle_worst = 0.0;
    for (double r : rhos) {
        const SaddleData s = saddle(Rho(r));
        double res = 0.0;
        if (s.x1) res = std::abs(r * std::sinh(*s.x1) / *s.x1 - 1.0);
        if (s.y1) res = std::abs(*s.y1 + r * std::sin(*s.y1) - kPi);
        saddle_worst = std::max(saddle_worst, res);
    }
    o.check(saddle_worst < 1e-12, fmt("saddle residual max %.2e", saddle_worst));

    double path_worst = 0.0;
    std::size_t n_samples = 0;
    for (double r : rhos) {
        const PathTrace trace = trace_path(Rho(r), 50.0);
        const DescentPath local(trace.saddle);
        for (const auto& s : trace.samples) {
            const double res = std::abs(local.delta_h(s.xi - trace.saddle.xi_saddle) - s.tau);
            path_worst = std::max(path_worst, res);
        }
        n_samples += trace.samples.size();
    }
    o.check(path_worst < 1e-10,
            fmt("path residual max %.2e over %g samples (tau <= 50)", path_worst, double(n_samples)));

    double conv_worst = 0.0;
    for (double t : {0.1, 0.25, 0.5}) {
        for (double r : {0.5, 1.0, 2.0}) {
            const long bits = required_bits(t);
            const double a = theta_direct_at(r / t, t, bits).theta;
            const double b = theta_direct_at(r / t, t, 2 * bits).theta;
            conv_worst = std::max(conv_worst, std::abs(a / b - 1.0));
        }
    }
    o.check(conv_worst < 1e-12, fmt("oracle precision-doubling change max %.2e", conv_worst));
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3,
                                                            criterion4, criterion5, criterion6,
                                                            criterion7, criterion8, criterion9};
    std::vector<int> which;
    if (argc > 1) {
        const int n = std::atoi(argv[1]);
        if (n < 1 || n > int(criteria.size())) {
            std::fprintf(stderr, "usage: acceptance [1-%zu]\n", criteria.size());
            return 2;
        }
        which.push_back(n);
    } else {
        for (int n = 1; n <= int(criteria.size()); ++n) which.push_back(n);
    }

    bool all = true;
    for (int n : which) {
        Outcome r;
        try {
            r = criteria[n - 1]();
        } catch (const std::exception& e) {
            r = Outcome{false, std::string("exception: ") + e.what()};
        }
        all = all && r.pass;
        std::printf("CRITERION %d: %s  %s\n", n, r.pass ? "PASS" : "FAIL", r.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
