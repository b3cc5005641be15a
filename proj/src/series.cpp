#include "hw/series.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <sstream>

#include "hw/core.hpp"

namespace hw {

namespace series_ops {

RationalSeries multiply(const RationalSeries& a, const RationalSeries& b, std::size_t n) {
    RationalSeries out(n, Rational(0));
    for (std::size_t i = 0; i < std::min(a.size(), n); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

RationalSeries reciprocal(const RationalSeries& a, std::size_t n) {
    if (a.empty() || a[0] == 0) throw DomainError("series reciprocal needs a nonzero constant term");
    RationalSeries out(n, Rational(0));
    out[0] = 1 / a[0];
    for (std::size_t k = 1; k < n; ++k) {
        Rational acc = 0;
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc += a[j] * out[k - j];
        out[k] = -acc * out[0];
    }
    return out;
}

RationalSeries sqrt_unit(const RationalSeries& a, std::size_t n) {
    if (a.empty() || a[0] != 1) throw DomainError("series square root needs constant term 1");
    // s^2 = a, s[0] = 1: 2 s[k] = a[k] - sum_{0<j<k} s[j] s[k-j]
    RationalSeries s(n, Rational(0));
    s[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        Rational acc = k < a.size() ? a[k] : Rational(0);
        for (std::size_t j = 1; j < k; ++j) acc -= s[j] * s[k - j];
        s[k] = acc / 2;
    }
    return s;
}

RationalSeries compose(const RationalSeries& f, const RationalSeries& g, std::size_t n) {
    if (!g.empty() && g[0] != 0) throw DomainError("series composition needs g(0) = 0");
    RationalSeries acc(n, Rational(0));
    for (std::size_t k = std::min(f.size(), n); k-- > 0;) {
        acc = multiply(acc, g, n);
        acc[0] += f[k];
    }
    return acc;
}

}  // namespace series_ops

namespace {

using namespace series_ops;
using boost::multiprecision::mpfr_float;
using boost::multiprecision::mpz_int;

Rational factorial(unsigned k) {
    mpz_int f = 1;
    for (unsigned i = 2; i <= k; ++i) f *= i;
    return Rational(f);
}

Rational power(const Rational& base, unsigned e) {
    Rational out = 1;
    for (unsigned i = 0; i < e; ++i) out *= base;
    return out;
}

// gamma_n of g = sum_{n >= -1} gamma_n mu^n, returned as coefficients of mu^{n+1}.
RationalSeries g_times_mu(std::size_t n) {
    const RationalSeries w = zeta_squared_in_mu(n + 1);
    // w = mu W(mu)
    RationalSeries W(w.begin() + 1, w.end());
    W.resize(n, Rational(0));
    RationalSeries S(n), T(n);  // sinh(z)/z and (sinh(z)/z - 1)/z^2 as series in w = z^2
    for (std::size_t k = 0; k < n; ++k) {
        S[k] = 1 / factorial(2 * k + 1);
        T[k] = 1 / factorial(2 * k + 3);
    }
    const RationalSeries s_of_mu = compose(S, w, n);
    const RationalSeries t_of_mu = compose(T, w, n);
    return multiply(s_of_mu, reciprocal(multiply(W, t_of_mu, n), n), n);
}

}  // namespace

double SurdCoefficient::value() const {
    const double v = static_cast<double>(q);
    return sqrt6 ? v * std::sqrt(6.0) : v;
}

std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << '/' << denominator(q);
    return os.str();
}

std::string SurdCoefficient::str() const {
    if (!sqrt6) return to_string(q);
    if (q == 1) return "sqrt(6)";
    if (q == -1) return "-sqrt(6)";
    return to_string(q) + "*sqrt(6)";
}

std::string SurdCoefficient::str_over_sqrt6() const {
    if (!sqrt6) return str();
    const Rational p = q * 6;
    std::ostringstream os;
    os << numerator(p) << '/';
    if (denominator(p) == 1)
        os << "sqrt(6)";
    else
        os << '(' << denominator(p) << "*sqrt(6))";
    return os.str();
}

std::string SurdCoefficient::decimal(int digits) const {
    if (digits < 1) throw DomainError("decimal rendering needs at least one digit");
    const unsigned saved = mpfr_float::default_precision();
    mpfr_float::default_precision(static_cast<unsigned>(digits) + 20);
    mpfr_float v = mpfr_float(numerator(q)) / mpfr_float(denominator(q));
    if (sqrt6) v *= sqrt(mpfr_float(6));
    const std::string out = v.str(digits - 1, std::ios_base::scientific);
    mpfr_float::default_precision(saved);
    return out;
}

double HalfPowerSeries::evaluate(double v, std::size_t n) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < std::min(n, terms.size()); ++j)
        sum += terms[j].coeff.value() * std::pow(v, terms[j].half_exponent);
    return sum;
}

RationalSeries zeta_squared_in_mu(std::size_t order) {
    if (order < 1) throw DomainError("series order must be at least 1");
    const std::size_t n = order + 1;
    // phi(w)^2 = 24 (cosh(z) - 1 - z^2/2) / w^2 = 1 + w/30 + ...,  and  w phi(w) = 12 mu.
    RationalSeries phi_sq(n);
    for (std::size_t k = 0; k < n; ++k) phi_sq[k] = Rational(24) / factorial(2 * (k + 2));
    const RationalSeries inv_phi = reciprocal(sqrt_unit(phi_sq, n), n);

    RationalSeries w(n, Rational(0));
    w[1] = 12;
    // Fixed point w = 12 mu / phi(w); every pass fixes one more coefficient.
    for (std::size_t pass = 0; pass < n; ++pass) {
        const RationalSeries scaled = compose(inv_phi, w, n);
        RationalSeries next(n, Rational(0));
        for (std::size_t k = 1; k < n; ++k) next[k] = 12 * scaled[k - 1];
        if (next == w) break;
        w = std::move(next);
    }
    return w;
}

HalfPowerSeries invert_zeta_equation(std::size_t order) {
    if (order < 2) throw DomainError("zeta^2 inversion needs order >= 2");
    const RationalSeries w = zeta_squared_in_mu(order);
    HalfPowerSeries out{SeriesVariable::SqrtMinusTau, {}};
    // mu^k = 6^{-k/2} (-tau)^{k/2}
    for (std::size_t k = 1; k <= order; ++k) {
        if (k % 2 == 0)
            out.terms.push_back({int(k), {w[k] / power(Rational(6), k / 2), false}});
        else
            out.terms.push_back({int(k), {w[k] / power(Rational(6), (k + 1) / 2), true}});
    }
    return out;
}

HalfPowerSeries im_g_series(std::size_t order) {
    if (order < 1) throw DomainError("series order must be at least 1");
    const RationalSeries gm = g_times_mu(2 * order);
    HalfPowerSeries out{SeriesVariable::SqrtTau, {}};
    // mu = -i sqrt(tau)/sqrt(6): an odd power n contributes Im (-i)^n = (-1)^{(n+1)/2}.
    for (std::size_t j = 0; j < order; ++j) {
        const int n = 2 * int(j) - 1;
        const Rational sign = (j % 2 == 0) ? 1 : -1;
        out.terms.push_back({n, {sign * gm[2 * j] / power(Rational(6), j), true}});
    }
    return out;
}

HalfPowerSeries delta_series(std::size_t order) {
    if (order < 1) throw DomainError("series order must be at least 1");
    const HalfPowerSeries img = im_g_series(order + 1);
    HalfPowerSeries out{SeriesVariable::SqrtTau, {}};
    // sqrt(2/3) = 2/sqrt(6), so q sqrt(6) tau^{(2m-1)/2} contributes 2q tau^m.
    for (std::size_t m = 1; m <= order; ++m) out.terms.push_back({int(2 * m), {2 * img.terms[m].coeff.q, false}});
    return out;
}

ThetaSeries theta_series_rho1(std::size_t order) {
    if (order < 1) throw DomainError("series order must be at least 1");
    ThetaSeries out;
    out.coeffs.push_back(1);
    if (order == 1) return out;
    const HalfPowerSeries d = delta_series(order - 1);
    // tau^{m-1/2} -> Gamma(m + 1/2) t^{m+1/2}; relative to the leading Gamma(1/2) this is (2m-1)!!/2^m.
    Rational ratio = 1;
    for (std::size_t m = 1; m < order; ++m) {
        ratio *= Rational(2 * m - 1, 2);
        out.coeffs.push_back(d.terms[m - 1].coeff.q * ratio);
    }
    return out;
}

double ThetaSeries::prefactor(double t) { return std::sqrt(3.0) / (2.0 * kPi * t) * std::exp(1.0 / t); }

double ThetaSeries::evaluate(double t, std::size_t n) const {
    double sum = 0.0;
    for (std::size_t k = std::min(n, coeffs.size()); k-- > 0;) sum = sum * t + static_cast<double>(coeffs[k]);
    return prefactor(t) * sum;
}

double ThetaSeries::term(std::size_t k, double t) const {
    return std::abs(static_cast<double>(coeffs.at(k)) * std::pow(t, double(k)));
}

double delta_large_tau(double tau) {
    if (!(tau >= 100.0)) throw DomainError("large-tau asymptote needs tau >= 100");
    return -1.0 + kPi * std::sqrt(2.0 / (3.0 * tau));
}

}  // namespace hw
