#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <vector>

#include "hw/core.hpp"

namespace hw {

using Rational = boost::multiprecision::mpq_rational;

/// Truncated power series sum_{k < size} c[k] x^k with exact rational coefficients.
using RationalSeries = std::vector<Rational>;

namespace series_ops {
RationalSeries multiply(const RationalSeries& a, const RationalSeries& b, std::size_t n);
/// 1/a, requires a[0] != 0.
RationalSeries reciprocal(const RationalSeries& a, std::size_t n);
/// sqrt(a), requires a[0] == 1.
RationalSeries sqrt_unit(const RationalSeries& a, std::size_t n);
/// f(g(x)), requires g[0] == 0.
RationalSeries compose(const RationalSeries& f, const RationalSeries& g, std::size_t n);
}  // namespace series_ops

/// q or q*sqrt(6), exactly.
struct SurdCoefficient {
    Rational q;
    bool sqrt6 = false;

    double value() const;
    /// "a/b" or "a/b*sqrt(6)".
    std::string str() const;
    /// The same number written as p/(d*sqrt(6)); only meaningful when sqrt6 is set.
    std::string str_over_sqrt6() const;
    /// Decimal rendering with `digits` significant digits.
    std::string decimal(int digits) const;

    friend bool operator==(const SurdCoefficient&, const SurdCoefficient&) = default;
};

enum class SeriesVariable {
    SqrtMinusTau,  // powers of (-tau)^{1/2}
    SqrtTau,       // powers of tau^{1/2}
};

/// sum_j coeff_j * v^{half_exponent_j}, v = (+-tau)^{1/2}; only retained terms are stored.
struct HalfPowerSeries {
    struct Term {
        int half_exponent;
        SurdCoefficient coeff;
    };
    SeriesVariable variable;
    std::vector<Term> terms;

    std::size_t order() const noexcept { return terms.size(); }
    /// Sum of the first `n` terms (all when n exceeds order) at v = sqrt(+-tau) >= 0.
    double evaluate(double v, std::size_t n = SIZE_MAX) const;
};

/// Power series of w = zeta^2 in mu = sqrt(-tau/6), solving 6 mu^2 = cosh(zeta) - 1 - zeta^2/2.
/// Coefficients w_1 .. w_order (index 0 is the zero constant term).
RationalSeries zeta_squared_in_mu(std::size_t order);

/// zeta^2 in powers of sqrt(-tau) from tau = zeta^2/2 - cosh(zeta) + 1: `order` terms,
/// starting 2 sqrt(6) sqrt(-tau) - (2/5)(-tau) + ...
HalfPowerSeries invert_zeta_equation(std::size_t order);

/// Im g(tau, 1) along the fourth-quadrant branch sqrt(-tau) = -i sqrt(tau):
/// `order` terms in tau^{-1/2}, tau^{1/2}, tau^{3/2}, ...
HalfPowerSeries im_g_series(std::size_t order);

/// delta(tau, 1) = -1 + sqrt(2/3) sqrt(tau) Im g(tau, 1) as integer powers tau^1 .. tau^order.
HalfPowerSeries delta_series(std::size_t order);

/// theta(1/t, t) = sqrt(3)/(2 pi t) e^{1/t} sum_k c_k t^k.
struct ThetaSeries {
    std::vector<Rational> coeffs;  // c_0 = 1

    static double prefactor(double t);
    /// Prefactor times the first `n` terms.
    double evaluate(double t, std::size_t n = SIZE_MAX) const;
    /// |c_k t^k| relative to the prefactor.
    double term(std::size_t k, double t) const;
};

/// `order` coefficients c_0 .. c_{order-1}, from Watson's lemma applied to im_g_series.
ThetaSeries theta_series_rho1(std::size_t order);

/// Two-term large-tau asymptote -1 + pi sqrt(2/(3 tau)); requires tau >= 100.
double delta_large_tau(double tau);

std::string to_string(const Rational& q);

}  // namespace hw
