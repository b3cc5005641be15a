#pragma once

#include <optional>
#include <string_view>

#include "hw/core.hpp"

namespace hw {

enum class Regime { SubCritical, Critical, SuperCritical };

std::string_view to_string(Regime regime);

/// Everything about the exponent h(xi) = xi^2/2 + rho cosh(xi) - i pi xi that depends
/// only on rho: the governing saddle X, the leading coefficient g0 and the
/// functions F, G of the leading-order approximation.
///
/// cosh_saddle / sinh_saddle are cosh(X), sinh(X) in closed form (no rounding of
/// i*pi), and h2 = h''(X) is computed without cancellation near rho = 1.
struct SaddleData {
    Rho rho;
    Regime regime;
    std::optional<double> x1;
    std::optional<double> y1;
    Complex xi_saddle;
    double g0;
    double F;
    double G;

    Complex cosh_saddle;
    Complex sinh_saddle;
    double h2;
    // rho used by the local model around X; exactly 1 inside the critical band.
    double model_rho;
};

Regime classify(Rho rho, double eps_crit = kDefaultCriticalBand);

/// Positive root of rho sinh(x)/x = 1, for 0 < rho < 1.
double solve_x1(Rho rho);

/// Root of y + rho sin(y) = pi in (0, pi], for rho >= 1.
double solve_y1(Rho rho);

/// Exponent of the integrand, evaluated directly.
template <typename T>
std::complex<T> h(const std::complex<T>& xi, T rho) {
    const T pi = T(kPi);
    return xi * xi / T(2) + rho * std::cosh(xi) - std::complex<T>(0, pi) * xi;
}

/// h'(xi) = xi + rho sinh(xi) - i pi; also the denominator of g.
template <typename T>
std::complex<T> h_prime(const std::complex<T>& xi, T rho) {
    return xi + rho * std::sinh(xi) - std::complex<T>(0, T(kPi));
}

inline Complex h(Complex xi, Rho rho) { return h<double>(xi, rho.value()); }

SaddleData saddle(Rho rho, double eps_crit = kDefaultCriticalBand);

double g0(Rho rho, double eps_crit = kDefaultCriticalBand);
double F(Rho rho, double eps_crit = kDefaultCriticalBand);
double G(Rho rho, double eps_crit = kDefaultCriticalBand);

namespace detail {
// x cosh x - sinh x, accurate for small x.
double x_cosh_minus_sinh(double x);
// sin z - z cos z, accurate for small z.
double sin_minus_z_cos(double z);
}  // namespace detail

}  // namespace hw
