#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "hw/core.hpp"

namespace hw {

inline constexpr long kDefaultMaxBits = 4096;

/// Knobs for the direct evaluation of theta(r, t).
struct PrecisionConfig {
    // 0 selects required_bits(t).
    long working_bits = 0;
    // Gauss-Legendre nodes per sub-panel; every half period [k t, (k+1) t] holds one or more sub-panels.
    int panel_points = 32;
    double tail_tolerance = 1e-3;
    // Integrate exactly up to this xi instead of using the automatic truncation.
    std::optional<double> xi_max_override;
    // Ceiling on working_bits; see max_bits_from_env().
    long max_bits = kDefaultMaxBits;

    void validate() const;
};

/// The precision ceiling, taken from HW_MAX_BITS when set.
long max_bits_from_env();

enum class Method { Direct, Asymptotic, SeriesRho1 };

std::string_view to_string(Method method);

struct EvalResult {
    double theta;
    Method method;
    long precision_used_bits;
    // Direct: relative change against a lower-precision companion run.
    // Asymptotic: the bound t/70. SeriesRho1: first omitted term, relative.
    double error_estimate;
};

/// ceil(pi^2/(2t) log2(e)) + 64: cancellation budget of the e^{pi^2/(2t)} prefactor plus guard bits.
long required_bits(double t);

struct QuadratureDiagnostics {
    double theta;
    double xi_max;
    // Integral over each half period [k t, (k+1) t], rounded to double.
    std::vector<double> half_period_integrals;
    // Index of the first half period past the maximum of the envelope.
    std::size_t decay_start = 0;
};

/// theta(r, t) = r/sqrt(2 pi^3 t) e^{pi^2/(2t)} int_0^inf e^{-xi^2/(2t) - r cosh xi} sinh xi sin(pi xi/t) dxi,
/// integrated at exactly `bits` of working precision.
QuadratureDiagnostics theta_direct_at(double r, double t, long bits, const PrecisionConfig& cfg = {});

/// Direct evaluation at the configured (or required) precision with a precision-halving error estimate.
EvalResult theta_direct(double r, double t, const PrecisionConfig& cfg = {});

}  // namespace hw
