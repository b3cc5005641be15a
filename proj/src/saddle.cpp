#include "hw/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hw {

namespace detail {

double x_cosh_minus_sinh(double x) {
    // sum_{k>=1} 2k x^{2k+1} / (2k+1)!
    if (std::abs(x) < 0.5) {
        const double x2 = x * x;
        double term = x * x2 / 3.0;  // k = 1
        double sum = term;
        for (int k = 2; k < 30; ++k) {
            term *= x2 * k / ((k - 1.0) * (2.0 * k) * (2.0 * k + 1.0));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return x * std::cosh(x) - std::sinh(x);
}

double sin_minus_z_cos(double z) {
    // sum_{k>=1} (-1)^{k+1} 2k z^{2k+1} / (2k+1)!
    if (std::abs(z) < 0.5) {
        const double z2 = z * z;
        double term = z * z2 / 3.0;
        double sum = term;
        for (int k = 2; k < 30; ++k) {
            term *= -z2 * k / ((k - 1.0) * (2.0 * k) * (2.0 * k + 1.0));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return std::sin(z) - z * std::cos(z);
}

}  // namespace detail

namespace {

using Fn = std::function<double(double)>;

// Bisection down to a bracket of width 1e-3, then safeguarded Newton.
// Requires f(lo) < 0 < f(hi).
double bracketed_root(const Fn& f, const Fn& df, double lo, double hi) {
    double flo = f(lo);
    double fhi = f(hi);
    if (!(flo < 0.0 && fhi > 0.0))
        throw NumericalError("root bracket does not change sign");
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        (fm < 0.0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        (fx < 0.0 ? lo : hi) = x;
        const double d = df(x);
        double next = x - fx / d;
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 4e-16 * std::abs(x)) return next;
        x = next;
    }
    return x;
}

double sinhc(double x) { return x == 0.0 ? 1.0 : std::sinh(x) / x; }
double sinc(double z) { return z == 0.0 ? 1.0 : std::sin(z) / z; }

}  // namespace

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::SubCritical: return "subcritical";
        case Regime::Critical: return "critical";
        case Regime::SuperCritical: return "supercritical";
    }
    return "?";
}

Regime classify(Rho rho, double eps_crit) {
    if (!(eps_crit >= 0.0) || !std::isfinite(eps_crit))
        throw DomainError("critical band half-width must be non-negative");
    const double r = rho.value();
    if (std::abs(r - 1.0) <= eps_crit) return Regime::Critical;
    if (r < 1.0 - eps_crit) return Regime::SubCritical;
    return Regime::SuperCritical;
}

double solve_x1(Rho rho) {
    const double r = rho.value();
    if (r >= 1.0) throw DomainError("solve_x1 needs 0 < rho < 1");
    const double lo = 1e-8;
    const double hi = std::max(10.0, 3.0 * std::log(2.0 / r));
    const auto f = [r](double x) { return r * sinhc(x) - 1.0; };
    const auto df = [r](double x) { return r * detail::x_cosh_minus_sinh(x) / (x * x); };
    return bracketed_root(f, df, lo, hi);
}

double solve_y1(Rho rho) {
    const double r = rho.value();
    if (r < 1.0) throw DomainError("solve_y1 needs rho >= 1");
    if (r == 1.0) return kPi;
    if (r <= 2.0) {
        // Near the coalescence work in z = pi - y, where rho sin(z)/z = 1.
        const auto f = [r](double z) { return 1.0 - r * sinc(z); };
        const auto df = [r](double z) { return r * detail::sin_minus_z_cos(z) / (z * z); };
        const double z = bracketed_root(f, df, 1e-12, kPi - 1e-8);
        return kPi - z;
    }
    const auto f = [r](double y) { return y + r * std::sin(y) - kPi; };
    const auto df = [r](double y) { return 1.0 + r * std::cos(y); };
    // f increases then decreases on (0, pi): bracket the root on the rising side.
    const double peak = std::acos(-1.0 / r);
    return bracketed_root(f, df, 1e-8, peak);
}

SaddleData saddle(Rho rho, double eps_crit) {
    const double r = rho.value();
    const Regime regime = classify(rho, eps_crit);
    switch (regime) {
        case Regime::SubCritical: {
            const double x1 = solve_x1(rho);
            const double sh = std::sinh(x1);
            const double ch = std::cosh(x1);
            // rho cosh(x1) - 1 with rho = x1 / sinh(x1) substituted
            const double curvature = detail::x_cosh_minus_sinh(x1) / sh;
            const double g0 = sh / std::sqrt(2.0 * curvature);
            const double F = 0.5 * x1 * x1 - r * ch + kHalfPiSq;
            return SaddleData{rho,          regime, x1,         std::nullopt, Complex(x1, kPi), g0, F,
                              std::sqrt(2.0) * r * g0, Complex(-ch, 0.0), Complex(-sh, 0.0), -curvature, r};
        }
        case Regime::SuperCritical: {
            const double y1 = solve_y1(rho);
            double curvature;
            if (r <= 2.0) {
                const double z = kPi - y1;
                curvature = detail::sin_minus_z_cos(z) / std::sin(z);
            } else {
                curvature = 1.0 + r * std::cos(y1);
            }
            const double s = std::sin(y1);
            const double g0 = s / std::sqrt(2.0 * curvature);
            const double F = -0.5 * y1 * y1 + r * std::cos(y1) + kPi * y1;
            return SaddleData{rho, regime, std::nullopt, y1, Complex(0.0, y1), g0, F,
                              std::sqrt(2.0) * r * g0, Complex(std::cos(y1), 0.0), Complex(0.0, s), curvature, r};
        }
        case Regime::Critical: {
            const double g0 = std::sqrt(1.5);
            return SaddleData{rho, regime, std::nullopt, kPi, Complex(0.0, kPi), g0, kHalfPiSq - 1.0,
                              std::sqrt(2.0) * r * g0, Complex(-1.0, 0.0), Complex(0.0, 0.0), 0.0, 1.0};
        }
    }
    throw DomainError("unreachable regime");
}

double g0(Rho rho, double eps_crit) { return saddle(rho, eps_crit).g0; }
double F(Rho rho, double eps_crit) { return saddle(rho, eps_crit).F; }
double G(Rho rho, double eps_crit) { return saddle(rho, eps_crit).G; }

}  // namespace hw
