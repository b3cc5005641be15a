#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hw {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPiSq = 0.5 * kPi * kPi;

/// Default half-width of the band around rho = 1 treated as the quartic-saddle case.
inline constexpr double kDefaultCriticalBand = 1e-6;

/// Input outside an operation's domain (bad rho, t <= 0, wrong regime, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure failed to converge or lost too much accuracy.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by g(xi, rho) when evaluated on top of a saddle point.
class PoleError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The steepest-descent continuation could not proceed past `last_good_tau`.
class PathError : public NumericalError {
public:
    PathError(const std::string& what, double last_good_tau)
        : NumericalError(what), last_good_tau_(last_good_tau) {}
    double last_good_tau() const noexcept { return last_good_tau_; }

private:
    double last_good_tau_;
};

/// The direct quadrature would need more working bits than the configured ceiling.
class PrecisionOverflow : public NumericalError {
public:
    PrecisionOverflow(const std::string& what, long required_bits)
        : NumericalError(what), required_bits_(required_bits) {}
    long required_bits() const noexcept { return required_bits_; }

private:
    long required_bits_;
};

/// rho = r * t, the scaling variable held fixed as t -> 0.
class Rho {
public:
    explicit Rho(double value) : value_(value) {
        if (!std::isfinite(value) || value <= 0.0)
            throw DomainError("rho must be positive and finite, got " + std::to_string(value));
    }
    double value() const noexcept { return value_; }
    friend bool operator==(Rho, Rho) = default;

private:
    double value_;
};

inline void require_positive(double x, const char* name) {
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(x));
}

}  // namespace hw
