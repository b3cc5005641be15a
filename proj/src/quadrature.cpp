#include "hw/quadrature.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

namespace hw {

namespace {

using Real = boost::multiprecision::mpfr_float;

unsigned digits_for_bits(long bits) { return static_cast<unsigned>(std::ceil(bits * std::log10(2.0))) + 1; }

class PrecisionScope {
public:
    explicit PrecisionScope(long bits) : saved_(Real::default_precision()) {
        Real::default_precision(digits_for_bits(bits));
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

struct GaussRule {
    std::vector<Real> nodes;
    std::vector<Real> weights;
};

// Gauss-Legendre rule on [-1, 1] at the current default precision.
const GaussRule& gauss_legendre(int n) {
    thread_local std::map<std::pair<int, unsigned>, GaussRule> cache;
    const auto key = std::make_pair(n, Real::default_precision());
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    GaussRule rule;
    const Real eps = ldexp(Real(1), -static_cast<int>(Real::default_precision() * 3.2));
    for (int i = 1; i <= n; ++i) {
        Real x = std::cos(kPi * (i - 0.25) / (n + 0.5));
        Real dp;
        for (int it = 0; it < 100; ++it) {
            Real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = std::move(p1);
                p1 = std::move(p2);
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const Real step = p1 / dp;
            x -= step;
            if (abs(step) <= eps) break;
        }
        rule.nodes.push_back(x);
        rule.weights.push_back(2 / ((1 - x * x) * dp * dp));
    }
    return cache.emplace(key, std::move(rule)).first->second;
}

double log_envelope(double xi, double r, double t) {
    return -xi * xi / (2.0 * t) - r * std::cosh(xi) + std::log(std::sinh(xi));
}

// Hard truncation point: beyond it the envelope is below 2^-bits e^{-pi^2/(2t) - 50}.
double xi_cap(double r, double t, long bits) {
    const double budget = bits * std::log(2.0) + kHalfPiSq / t + 50.0;
    const auto excess = [&](double xi) { return xi * xi / (2.0 * t) + r * std::cosh(xi) - budget; };
    double lo = 0.0, hi = 1.0;
    while (excess(hi) < 0.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) < 0.0 ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace

void PrecisionConfig::validate() const {
    if (working_bits != 0 && working_bits < 64) throw DomainError("working_bits must be at least 64");
    if (panel_points < 8) throw DomainError("panel_points must be at least 8");
    if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0)) throw DomainError("tail_tolerance must lie in (0, 1)");
    if (xi_max_override && !(*xi_max_override > 0.0)) throw DomainError("xi_max_override must be positive");
    if (max_bits < 64) throw DomainError("precision ceiling must be at least 64 bits");
}

long max_bits_from_env() {
    if (const char* env = std::getenv("HW_MAX_BITS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 64) return v;
        throw DomainError(std::string("HW_MAX_BITS must be an integer >= 64, got '") + env + "'");
    }
    return kDefaultMaxBits;
}

std::string_view to_string(Method method) {
    switch (method) {
        case Method::Direct: return "direct";
        case Method::Asymptotic: return "asymptotic";
        case Method::SeriesRho1: return "series";
    }
    return "?";
}

long required_bits(double t) {
    require_positive(t, "t");
    return static_cast<long>(std::ceil(kHalfPiSq / t * std::log2(std::exp(1.0)))) + 64;
}

QuadratureDiagnostics theta_direct_at(double r, double t, long bits, const PrecisionConfig& cfg) {
    require_positive(r, "r");
    require_positive(t, "t");
    cfg.validate();
    if (bits > cfg.max_bits)
        throw PrecisionOverflow("direct quadrature needs " + std::to_string(bits) + " bits, above the ceiling of " +
                                    std::to_string(cfg.max_bits),
                                bits);

    PrecisionScope scope(bits);
    const GaussRule& rule = gauss_legendre(cfg.panel_points);
    const Real T = t;
    const Real R = r;
    const Real pi = acos(Real(-1));
    const Real pi_over_t = Real(pi) / T;
    const Real inv_2t = 1 / (2 * T);
    const auto integrand = [&](const Real& xi) {
        return exp(-xi * xi * inv_2t - R * cosh(xi)) * sinh(xi) * sin(pi_over_t * xi);
    };

    const double cap = cfg.xi_max_override ? *cfg.xi_max_override : xi_cap(r, t, bits);
    const double log_guard = std::log(cfg.tail_tolerance) - 0.5 * bits * std::log(2.0) + std::log(1.0 / t);

    QuadratureDiagnostics out{};
    Real sum = 0;
    bool decaying = false;
    for (long k = 0;; ++k) {
        const Real a = T * k;
        double b = t * (k + 1);
        Real b_mp = T * (k + 1);
        if (b >= cap) {
            b = cap;
            b_mp = cap;
        }
        // Keep the change of the exponent across one sub-panel at about 2.
        const long pieces = std::max(1L, static_cast<long>(std::ceil((b + r * t * std::sinh(b)) / 2.0)));
        const Real width = (b_mp - a) / pieces;
        Real half_period = 0;
        for (long p = 0; p < pieces; ++p) {
            const Real mid = a + width * (p + Real(0.5));
            const Real half = width / 2;
            Real acc = 0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * integrand(mid + half * rule.nodes[i]);
            half_period += acc * half;
        }
        sum += half_period;
        out.half_period_integrals.push_back(static_cast<double>(half_period));

        if (b >= cap) {
            out.xi_max = b;
            break;
        }
        if (!decaying && -b / t - r * std::sinh(b) + 1.0 / std::tanh(b) < 0.0) {
            decaying = true;
            out.decay_start = static_cast<std::size_t>(k + 1);
        }
        if (!cfg.xi_max_override && decaying && sum != 0) {
            const double log_sum = static_cast<double>(log(abs(sum)));
            if (log_envelope(b, r, t) < log_guard + log_sum) {
                out.xi_max = b;
                break;
            }
        }
    }

    const Real theta = R / sqrt(2 * pi * pi * pi * T) * exp(pi * pi * inv_2t) * sum;
    out.theta = static_cast<double>(theta);
    return out;
}

EvalResult theta_direct(double r, double t, const PrecisionConfig& cfg) {
    require_positive(r, "r");
    require_positive(t, "t");
    cfg.validate();
    const long needed = required_bits(t);
    const long bits = cfg.working_bits > 0 ? cfg.working_bits : needed;
    if (bits > cfg.max_bits || needed > cfg.max_bits)
        throw PrecisionOverflow("t = " + std::to_string(t) + " needs " + std::to_string(std::max(bits, needed)) +
                                    " bits, above the ceiling of " + std::to_string(cfg.max_bits),
                                std::max(bits, needed));

    const double theta = theta_direct_at(r, t, bits, cfg).theta;
    // The companion run keeps 32 bits beyond the cancellation budget so it stays meaningful at small t.
    const long companion = std::max(bits / 2, needed - 32);
    const double coarse = theta_direct_at(r, t, std::min(companion, bits), cfg).theta;
    const double estimate = theta != 0.0 ? std::abs(theta - coarse) / std::abs(theta) : std::abs(coarse);
    return EvalResult{theta, Method::Direct, bits, estimate};
}

}  // namespace hw
