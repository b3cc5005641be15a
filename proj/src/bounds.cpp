#include "hw/bounds.hpp"

#include <cmath>

namespace hw {

double theta_leading(Rho rho, double t, double eps_crit) {
    require_positive(t, "t");
    const SaddleData s = saddle(rho, eps_crit);
    return std::exp(-(s.F - kHalfPiSq) / t) * s.G / (2.0 * kPi * t);
}

double measure_vartheta(Rho rho, double t, const PrecisionConfig& cfg, double eps_crit) {
    require_positive(t, "t");
    const EvalResult direct = theta_direct(rho.value() / t, t, cfg);
    return direct.theta / theta_leading(rho, t, eps_crit) - 1.0;
}

ThetaApprox approximate(Rho rho, double t, bool measure, const PrecisionConfig& cfg, double eps_crit) {
    ThetaApprox out{t, rho, theta_leading(rho, t, eps_crit), std::nullopt, t / 70.0, vartheta_max(t)};
    if (measure) out.vartheta_measured = measure_vartheta(rho, t, cfg, eps_crit);
    return out;
}

double erfc(double x) { return std::erfc(x); }

double ei_half(double z) {
    require_positive(z, "z");
    const double sz = std::sqrt(z);
    // Gamma(3/2, z) = Gamma(1/2, z)/2 + sqrt(z) e^{-z},  Gamma(1/2, z) = sqrt(pi) erfc(sqrt(z))
    const double upper_gamma = 0.5 * std::sqrt(kPi) * erfc(sz) + sz * std::exp(-z);
    return upper_gamma / (z * sz);
}

double vartheta_max(double t) {
    require_positive(t, "t");
    const double z = 35.0 / t;
    return t / 70.0 - std::sqrt(z / kPi) * ei_half(z) + erfc(std::sqrt(z));
}

std::vector<BoundCheckRow> check_bound(std::span<const double> rho_grid, std::span<const double> t_grid,
                                       const PrecisionConfig& cfg, double eps_crit) {
    if (rho_grid.empty() || t_grid.empty()) throw DomainError("bound check grids must not be empty");
    for (double t : t_grid) require_positive(t, "t");
    for (double r : rho_grid) Rho{r};

    std::vector<BoundCheckRow> rows;
    for (double r : rho_grid) {
        for (double t : t_grid) {
            BoundCheckRow row{r, t, std::nullopt, t / 70.0, vartheta_max(t), false, false, false, {}};
            try {
                const double v = measure_vartheta(Rho(r), t, cfg, eps_crit);
                row.vartheta = v;
                row.pass_simple = std::abs(v) <= row.bound_simple;
                row.pass_adjusted = std::abs(v) <= row.bound_simple + kSecondOrderAllowance * t * t;
                row.pass_strong = std::abs(v) <= row.bound_strong;
            } catch (const NumericalError& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace hw
