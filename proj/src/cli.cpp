#include "hw/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include "hw/bounds.hpp"
#include "hw/io.hpp"
#include "hw/path.hpp"
#include "hw/quadrature.hpp"
#include "hw/series.hpp"

namespace hw {

namespace {

constexpr std::size_t kDefaultSeriesTerms = 6;

struct EvalOptions {
    double rho = 0.0;
    double t = 0.0;
    std::string method = "asymptotic";
    long bits = 0;
    bool json = false;
    double eps_crit = kDefaultCriticalBand;
};

struct SweepOptions {
    std::string rho_list;
    double tau_max = 50.0;
    std::size_t points = 200;
    std::string out;
};

struct DeltaPrimeOptions {
    double rho_min = 0.05;
    double rho_max = 10.0;
    std::size_t points = 50;
    std::string out;
};

struct SeriesOptions {
    std::size_t order = kDefaultSeriesTerms;
    std::optional<int> decimal;
};

struct VerifyOptions {
    std::string rho_grid = "0.25,0.5,0.9,1,1.1,2,4";
    std::string t_grid = "0.05,0.1,0.2";
    std::string out;
};

// Runs `body` with either the --out file or `fallback` as the CSV sink.
int with_sink(const std::string& path, std::ostream& fallback, const std::function<int(std::ostream&)>& body) {
    if (path.empty()) return body(fallback);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DomainError("cannot open output file '" + path + "'");
    const int code = body(file);
    file.flush();
    if (!file) throw NumericalError("failed writing '" + path + "'");
    return code;
}

int cmd_eval(const EvalOptions& o, std::ostream& out) {
    const Rho rho(o.rho);
    require_positive(o.t, "t");
    EvalResult result{};
    if (o.method == "direct") {
        PrecisionConfig cfg;
        cfg.working_bits = o.bits;
        cfg.max_bits = max_bits_from_env();
        result = theta_direct(rho.value() / o.t, o.t, cfg);
    } else if (o.method == "asymptotic") {
        result = EvalResult{theta_leading(rho, o.t, o.eps_crit), Method::Asymptotic, 53, o.t / 70.0};
    } else if (o.method == "series") {
        if (classify(rho, o.eps_crit) != Regime::Critical)
            throw DomainError("--method series is only valid for rho = 1 (within the critical band)");
        const ThetaSeries s = theta_series_rho1(kDefaultSeriesTerms + 1);
        result = EvalResult{s.evaluate(o.t, kDefaultSeriesTerms), Method::SeriesRho1, 53,
                            s.term(kDefaultSeriesTerms, o.t)};
    } else {
        throw DomainError("unknown method '" + o.method + "'");
    }

    if (o.json) {
        nlohmann::ordered_json j;
        j["rho"] = rho.value();
        j["t"] = o.t;
        j["theta"] = result.theta;
        j["method"] = std::string(to_string(result.method));
        j["precision_used_bits"] = result.precision_used_bits;
        j["error_estimate"] = result.error_estimate;
        out << j.dump() << '\n';
    } else {
        out << "theta = " << format_number(result.theta) << '\n'
            << "method = " << to_string(result.method) << '\n'
            << "precision_used_bits = " << result.precision_used_bits << '\n'
            << "error_estimate = " << format_number(result.error_estimate) << '\n';
    }
    return kExitOk;
}

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<double> rhos = parse_list(o.rho_list);
    if (rhos.empty()) throw DomainError("--rho-list is empty");
    require_positive(o.tau_max, "--tau-max");
    if (o.points < 2) throw DomainError("--points must be at least 2");
    std::sort(rhos.begin(), rhos.end());
    std::vector<double> taus(o.points);
    for (std::size_t i = 0; i < o.points; ++i) taus[i] = o.tau_max * double(i + 1) / double(o.points);

    const auto cells = sweep_delta(rhos, taus);
    for (const auto& c : cells)
        if (!c.delta)
            err << "sweep-delta: rho=" << format_number(c.rho) << " tau=" << format_number(c.tau)
                << " omitted: " << c.error << '\n';
    return with_sink(o.out, out, [&](std::ostream& os) {
        write_sweep_csv(os, cells);
        return int(kExitOk);
    });
}

int cmd_delta_prime(const DeltaPrimeOptions& o, std::ostream& out, std::ostream& err) {
    if (o.points < 2) throw DomainError("--points must be at least 2");
    require_positive(o.rho_min, "--rho-min");
    require_positive(o.rho_max, "--rho-max");
    if (!(o.rho_min < o.rho_max)) throw DomainError("--rho-min must be below --rho-max");
    std::vector<DeltaPrimeRow> rows;
    for (double r : logspace(o.rho_min, o.rho_max, o.points)) {
        try {
            rows.push_back({r, delta_prime_at_zero(Rho(r))});
        } catch (const NumericalError& e) {
            err << "delta-prime: rho=" << format_number(r) << " omitted: " << e.what() << '\n';
        }
    }
    return with_sink(o.out, out, [&](std::ostream& os) {
        write_delta_prime_csv(os, rows);
        return int(kExitOk);
    });
}

std::string power_label(int half_exponent) {
    if (half_exponent % 2 == 0) return "tau^" + std::to_string(half_exponent / 2);
    return "tau^(" + std::to_string(half_exponent) + "/2)";
}

int cmd_series(const SeriesOptions& o, std::ostream& out) {
    if (o.order < 1) throw DomainError("--order must be at least 1");
    if (o.decimal && *o.decimal < 1) throw DomainError("--decimal must be at least 1");
    const auto decimal = [&](const SurdCoefficient& c) { return o.decimal ? "  " + c.decimal(*o.decimal) : ""; };

    out << "# Im g(tau,1) on the branch sqrt(-tau) = -i sqrt(tau)\n";
    for (const auto& term : im_g_series(o.order).terms)
        out << power_label(term.half_exponent) << "  " << term.coeff.str_over_sqrt6() << decimal(term.coeff) << '\n';

    out << "# delta(tau,1)\n";
    for (const auto& term : delta_series(o.order).terms)
        out << power_label(term.half_exponent) << "  " << term.coeff.str() << decimal(term.coeff) << '\n';

    out << "# theta(1/t,t) = sqrt(3)/(2 pi t) e^(1/t) sum_k c_k t^k\n";
    const ThetaSeries theta = theta_series_rho1(o.order);
    for (std::size_t k = 0; k < theta.coeffs.size(); ++k) {
        const SurdCoefficient c{theta.coeffs[k], false};
        out << 'c' << k << "  " << c.str() << decimal(c) << '\n';
    }
    return kExitOk;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
    const std::vector<double> rhos = parse_list(o.rho_grid);
    const std::vector<double> ts = parse_list(o.t_grid);
    if (rhos.empty() || ts.empty()) throw DomainError("--rho-grid and --t-grid must not be empty");
    PrecisionConfig cfg;
    cfg.max_bits = max_bits_from_env();
    const auto rows = check_bound(rhos, ts, cfg);

    bool oracle_failed = false;
    bool all_strong = true;
    std::size_t n_simple = 0, n_adjusted = 0, n_strong = 0, n_ok = 0;
    double worst = 0.0;
    const BoundCheckRow* worst_row = nullptr;
    for (const auto& r : rows) {
        if (!r.vartheta) {
            oracle_failed = true;
            err << "verify-bound: rho=" << format_number(r.rho) << " t=" << format_number(r.t) << ": " << r.error
                << '\n';
            continue;
        }
        ++n_ok;
        n_simple += r.pass_simple;
        n_adjusted += r.pass_adjusted;
        n_strong += r.pass_strong;
        all_strong = all_strong && r.pass_strong;
        const double ratio = std::abs(*r.vartheta) * 70.0 / r.t;
        if (ratio > worst) {
            worst = ratio;
            worst_row = &r;
        }
    }
    std::ostream& summary = o.out.empty() ? err : out;
    with_sink(o.out, out, [&](std::ostream& os) {
        write_bound_csv(os, rows);
        return int(kExitOk);
    });
    summary << "max |vartheta|*70/t = " << format_number(worst);
    if (worst_row) summary << " at rho=" << format_number(worst_row->rho) << " t=" << format_number(worst_row->t);
    summary << "; pass_simple " << n_simple << '/' << n_ok << ", pass_adjusted " << n_adjusted << '/' << n_ok
            << ", pass_strong " << n_strong << '/' << n_ok << '\n';
    if (oracle_failed) return kExitNumerical;
    return all_strong ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hartman-Watson integral: direct, leading-order and rho = 1 series evaluation; error-bound checks"};
    app.name("hwtheta");
    app.require_subcommand(1);

    EvalOptions eval;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate theta(rho/t, t)");
    eval_cmd->add_option("--rho", eval.rho, "rho = r t")->required();
    eval_cmd->add_option("--t", eval.t, "t")->required();
    eval_cmd->add_option("--method", eval.method, "direct | asymptotic | series")
        ->check(CLI::IsMember({"direct", "asymptotic", "series"}));
    eval_cmd->add_option("--bits", eval.bits, "working precision of the direct method (default: automatic)");
    eval_cmd->add_option("--eps-crit", eval.eps_crit, "half-width of the rho = 1 band");
    eval_cmd->add_flag("--json", eval.json, "emit JSON");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep-delta", "delta(tau, rho) on a grid, CSV rho,tau,delta,bound_ratio");
    sweep_cmd->add_option("--rho-list", sweep.rho_list, "comma separated rho values")->required();
    sweep_cmd->add_option("--tau-max", sweep.tau_max, "largest tau");
    sweep_cmd->add_option("--points", sweep.points, "tau points, evenly spaced in (0, tau-max]");
    sweep_cmd->add_option("--out", sweep.out, "output CSV (default stdout)");

    DeltaPrimeOptions dprime;
    auto* dprime_cmd = app.add_subcommand("delta-prime", "delta'(0, rho) on a log grid, CSV rho,delta_prime0");
    dprime_cmd->add_option("--rho-min", dprime.rho_min);
    dprime_cmd->add_option("--rho-max", dprime.rho_max);
    dprime_cmd->add_option("--points", dprime.points);
    dprime_cmd->add_option("--out", dprime.out, "output CSV (default stdout)");

    SeriesOptions series;
    auto* series_cmd = app.add_subcommand("series", "exact rho = 1 series coefficients");
    series_cmd->add_option("--order", series.order, "number of terms");
    series_cmd->add_option("--decimal", series.decimal, "also print decimals with this many digits");

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify-bound", "measure vartheta against t/70 and vartheta_max(t)");
    verify_cmd->add_option("--rho-grid", verify.rho_grid, "comma separated rho values");
    verify_cmd->add_option("--t-grid", verify.t_grid, "comma separated t values");
    verify_cmd->add_option("--out", verify.out, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*eval_cmd) return cmd_eval(eval, out);
        if (*sweep_cmd) return cmd_sweep(sweep, out, err);
        if (*dprime_cmd) return cmd_delta_prime(dprime, out, err);
        if (*series_cmd) return cmd_series(series, out);
        if (*verify_cmd) return cmd_verify(verify, out, err);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}

}  // namespace hw
