#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hw/saddle.hpp"

namespace hw {

/// Continuation controls for the steepest-descent tracer.
struct PathConfig {
    // Largest |delta xi| allowed in a single continuation step.
    double max_step = 0.1;
    // Accepted |h(X+d) - h(X) - tau| relative to tau after Newton.
    double residual_tol = 1e-11;
    int max_newton = 50;
};

/// One point xi(tau) on the descent path leaving the saddle towards +infinity.
struct PathSample {
    double tau;
    Complex xi;
    Complex g;
    double im_g;
    double delta;
};

struct PathTrace {
    Rho rho;
    SaddleData saddle;
    std::vector<PathSample> samples;
};

/// g(xi, rho) = sinh(xi) / (xi + rho sinh(xi) - i pi). Throws PoleError at a saddle.
Complex g_of_xi(Complex xi, Rho rho);

/// Follows the path Im h = 0 from the governing saddle X with tau = h(xi) - h(X)
/// increasing monotonically. The position is held as the displacement d = xi - X
/// and h(X+d) - h(X) is evaluated from its Taylor series about X for |d| <= 1, so
/// small tau carries full relative precision.
///
/// The branch leaving X is the one on which Im g > 0 (so Im g ~ g0/sqrt(tau));
/// when several qualify, the one heading into Re xi > Re X is taken. At rho = 1
/// this is the fourth-quadrant branch.
class DescentPath {
public:
    explicit DescentPath(const SaddleData& saddle, PathConfig cfg = {});

    /// Continue to `tau` (>= current tau) and return the sample there. When
    /// `steps` is given, every intermediate continuation point is appended.
    PathSample advance_to(double tau, std::vector<PathSample>* steps = nullptr);

    double tau() const noexcept { return tau_; }
    Complex displacement() const noexcept { return d_; }
    const SaddleData& saddle() const noexcept { return saddle_; }

    /// h(X+d) - h(X).
    Complex delta_h(Complex d) const;
    /// h'(X+d).
    Complex h_prime_at(Complex d) const;
    /// g(X+d).
    Complex g_at(Complex d) const;

    PathSample sample(double tau, Complex d) const;

private:
    std::optional<Complex> newton(Complex guess, double tau) const;
    void seed(double tau);

    SaddleData saddle_;
    PathConfig cfg_;
    double rho_;
    std::vector<Complex> coeffs_;  // Taylor coefficients of h(X+d) - h(X), index k -> d^k
    double tau_ = 0.0;
    Complex d_{};
    bool seeded_ = false;
};

/// Samples the descent path on (0, tau_max] at the tracer's own adaptive steps.
PathTrace trace_path(Rho rho, double tau_max, const PathConfig& cfg = {},
                     double eps_crit = kDefaultCriticalBand);

/// delta(tau, rho) = Im g(tau, rho) sqrt(tau) / g0(rho) - 1.
double delta(double tau, Rho rho, double eps_crit = kDefaultCriticalBand);

/// delta at every tau of an increasing grid, sharing one continuation.
std::vector<double> delta_on_grid(Rho rho, std::span<const double> taus, const PathConfig& cfg = {},
                                  double eps_crit = kDefaultCriticalBand);

/// Polynomial (Neville) extrapolation of samples f(h_j) to h = 0.
struct Extrapolation {
    double value;
    // |difference between the last two extrapolants|
    double change;
};
Extrapolation extrapolate_to_zero(std::span<const double> h, std::span<const double> f);

/// lim_{tau->0} delta(tau)/tau from tau = 1e-2, 1e-3, 1e-4. Throws NumericalError
/// when successive extrapolants differ by more than 1e-6.
double delta_prime_at_zero(Rho rho, double eps_crit = kDefaultCriticalBand);

/// lim_{tau->0} delta''(tau), from the traced path only.
double delta_second_at_zero(Rho rho, double eps_crit = kDefaultCriticalBand);

struct SweepCell {
    double rho;
    double tau;
    std::optional<double> delta;
    std::optional<double> bound_ratio;  // |delta| / min(tau/35, 1)
    std::string error;
};

/// delta on every (rho, tau) grid pair. A failed continuation leaves the remaining
/// cells of that rho empty instead of aborting the sweep.
std::vector<SweepCell> sweep_delta(std::span<const double> rho_grid, std::span<const double> tau_grid,
                                   const PathConfig& cfg = {}, double eps_crit = kDefaultCriticalBand);

double bound_ratio(double delta, double tau);

}  // namespace hw
