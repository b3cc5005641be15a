#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hw/quadrature.hpp"
#include "hw/saddle.hpp"

namespace hw {

/// Second coefficient of the rho = 1 theta series, used as the O(t^2) allowance.
inline constexpr double kSecondOrderAllowance = 7.0 / 11000.0;

struct ThetaApprox {
    double t;
    Rho rho;
    double theta_leading;
    std::optional<double> vartheta_measured;
    double bound_simple;
    double bound_strong;
};

/// (1/(2 pi t)) exp(-(F(rho) - pi^2/2)/t) G(rho).
double theta_leading(Rho rho, double t, double eps_crit = kDefaultCriticalBand);

/// theta_direct(rho/t, t) / theta_leading(rho, t) - 1.
double measure_vartheta(Rho rho, double t, const PrecisionConfig& cfg = {},
                        double eps_crit = kDefaultCriticalBand);

ThetaApprox approximate(Rho rho, double t, bool measure, const PrecisionConfig& cfg = {},
                        double eps_crit = kDefaultCriticalBand);

/// Complementary error function.
double erfc(double x);

/// Ei_{-1/2}(z) = int_1^inf e^{-z u} sqrt(u) du = z^{-3/2} Gamma(3/2, z).
double ei_half(double z);

/// Uniform error bound obtained from |delta(tau)| <= min(tau/35, 1):
/// t/70 - sqrt(35/(pi t)) Ei_{-1/2}(35/t) + erfc(sqrt(35/t)).
double vartheta_max(double t);

struct BoundCheckRow {
    double rho;
    double t;
    std::optional<double> vartheta;
    double bound_simple;
    double bound_strong;
    bool pass_simple = false;
    bool pass_adjusted = false;
    bool pass_strong = false;
    std::string error;
};

/// Measures vartheta on every grid cell against t/70, t/70 + (7/11000) t^2 and vartheta_max(t).
/// Oracle failures are recorded per cell.
std::vector<BoundCheckRow> check_bound(std::span<const double> rho_grid, std::span<const double> t_grid,
                                       const PrecisionConfig& cfg = {}, double eps_crit = kDefaultCriticalBand);

}  // namespace hw
