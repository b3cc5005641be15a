#include "hw/path.hpp"

#include <algorithm>
#include <cmath>

namespace hw {

namespace {

constexpr int kTaylorOrder = 32;

Complex cosh_minus_one(Complex d) {
    const Complex s = std::sinh(0.5 * d);
    return 2.0 * s * s;
}

void require_increasing(std::span<const double> xs, const char* what, bool strict) {
    if (xs.empty()) throw DomainError(std::string(what) + " must not be empty");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || xs[i] <= 0.0)
            throw DomainError(std::string(what) + " entries must be positive");
        if (i > 0 && (strict ? xs[i] <= xs[i - 1] : xs[i] < xs[i - 1]))
            throw DomainError(std::string(what) + " must be sorted ascending");
    }
}

}  // namespace

Complex g_of_xi(Complex xi, Rho rho) {
    const Complex den = h_prime<double>(xi, rho.value());
    if (std::abs(den) < 1e-14) throw PoleError("g(xi, rho) evaluated at a saddle point");
    return std::sinh(xi) / den;
}

DescentPath::DescentPath(const SaddleData& saddle, PathConfig cfg)
    : saddle_(saddle), cfg_(cfg), rho_(saddle.model_rho), coeffs_(kTaylorOrder + 1, Complex{}) {
    coeffs_[2] = 0.5 * saddle_.h2;
    double factorial = 2.0;
    for (int k = 3; k <= kTaylorOrder; ++k) {
        factorial *= k;
        const Complex& c = (k % 2 == 0) ? saddle_.cosh_saddle : saddle_.sinh_saddle;
        coeffs_[k] = rho_ * c / factorial;
    }
}

Complex DescentPath::delta_h(Complex d) const {
    if (std::abs(d) <= 1.0) {
        Complex acc = coeffs_[kTaylorOrder];
        for (int k = kTaylorOrder - 1; k >= 2; --k) acc = acc * d + coeffs_[k];
        return acc * d * d;
    }
    return 0.5 * d * d +
           rho_ * (saddle_.cosh_saddle * cosh_minus_one(d) + saddle_.sinh_saddle * (std::sinh(d) - d));
}

Complex DescentPath::h_prime_at(Complex d) const {
    if (std::abs(d) <= 1.0) {
        Complex acc = double(kTaylorOrder) * coeffs_[kTaylorOrder];
        for (int k = kTaylorOrder - 1; k >= 2; --k) acc = acc * d + double(k) * coeffs_[k];
        return acc * d;
    }
    return d + rho_ * (saddle_.sinh_saddle * cosh_minus_one(d) + saddle_.cosh_saddle * std::sinh(d));
}

Complex DescentPath::g_at(Complex d) const {
    const Complex num = saddle_.sinh_saddle * std::cosh(d) + saddle_.cosh_saddle * std::sinh(d);
    const Complex den = h_prime_at(d);
    if (den == Complex{}) throw PoleError("g evaluated at the saddle point");
    return num / den;
}

PathSample DescentPath::sample(double tau, Complex d) const {
    const Complex g = g_at(d);
    const double im_g = g.imag();
    return PathSample{tau, saddle_.xi_saddle + d, g, im_g, im_g * std::sqrt(tau) / saddle_.g0 - 1.0};
}

std::optional<Complex> DescentPath::newton(Complex guess, double tau) const {
    Complex d = guess;
    for (int it = 0; it < cfg_.max_newton; ++it) {
        const Complex fp = h_prime_at(d);
        if (fp == Complex{}) return std::nullopt;
        const Complex step = (delta_h(d) - tau) / fp;
        d -= step;
        if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) return std::nullopt;
        if (std::abs(step) <= 1e-15 * std::abs(d)) break;
    }
    if (std::abs(delta_h(d) - tau) > cfg_.residual_tol * tau) return std::nullopt;
    return d;
}

void DescentPath::seed(double tau_target) {
    const double c2 = std::abs(coeffs_[2]);
    const double c3 = std::abs(coeffs_[3]);
    const double c4 = std::abs(coeffs_[4]);
    int order = 4;
    Complex lead = coeffs_[4];
    double radius = 1e-3;
    if (c2 > 0.0) {
        // Stay well inside the region where the quadratic term dominates.
        order = 2;
        lead = coeffs_[2];
        double scale = 1.0;
        if (c3 > 0.0) scale = std::min(scale, c2 / c3);
        if (c4 > 0.0) scale = std::min(scale, std::sqrt(c2 / c4));
        radius = 1e-3 * scale;
    }
    double tau0 = std::abs(lead) * std::pow(radius, order);
    if (tau_target < tau0) {
        tau0 = tau_target;
        radius = std::pow(tau0 / std::abs(lead), 1.0 / order);
    }

    const double phi0 = -std::arg(lead) / order;
    std::optional<Complex> best;
    for (int k = 0; k < order; ++k) {
        const Complex guess = std::polar(radius, phi0 + 2.0 * kPi * k / order);
        const auto d = newton(guess, tau0);
        if (!d || g_at(*d).imag() <= 0.0) continue;
        if (!best || d->real() > best->real()) best = d;
    }
    if (!best) throw PathError("no descent branch with Im g > 0 at the saddle", 0.0);
    d_ = *best;
    tau_ = tau0;
    seeded_ = true;
}

PathSample DescentPath::advance_to(double target, std::vector<PathSample>* steps) {
    if (!std::isfinite(target) || target <= 0.0) throw DomainError("tau must be positive");
    if (!seeded_) {
        seed(target);
        if (steps) steps->push_back(sample(tau_, d_));
    }
    if (target < tau_) throw DomainError("descent path can only advance to larger tau");

    while (tau_ < target) {
        const Complex hp = h_prime_at(d_);
        double dtau = std::abs(hp) * std::min(cfg_.max_step, 0.5 * std::abs(d_));
        for (;;) {
            const double next = (dtau >= target - tau_) ? target : tau_ + dtau;
            const Complex predicted = d_ + (next - tau_) / hp;
            const auto corrected = newton(predicted, next);
            if (corrected && std::abs(*corrected - predicted) <= 0.5 * std::abs(predicted - d_)) {
                d_ = *corrected;
                tau_ = next;
                if (steps) steps->push_back(sample(tau_, d_));
                break;
            }
            dtau *= 0.5;
            if (dtau < 1e-15 * tau_)
                throw PathError("continuation stalled at tau = " + std::to_string(tau_), tau_);
        }
    }
    return sample(tau_, d_);
}

PathTrace trace_path(Rho rho, double tau_max, const PathConfig& cfg, double eps_crit) {
    require_positive(tau_max, "tau_max");
    PathTrace trace{rho, saddle(rho, eps_crit), {}};
    DescentPath path(trace.saddle, cfg);
    path.advance_to(tau_max, &trace.samples);
    return trace;
}

double delta(double tau, Rho rho, double eps_crit) {
    DescentPath path(saddle(rho, eps_crit));
    return path.advance_to(tau).delta;
}

std::vector<double> delta_on_grid(Rho rho, std::span<const double> taus, const PathConfig& cfg,
                                  double eps_crit) {
    require_increasing(taus, "tau grid", false);
    DescentPath path(saddle(rho, eps_crit), cfg);
    std::vector<double> out;
    out.reserve(taus.size());
    for (double t : taus) out.push_back(path.advance_to(t).delta);
    return out;
}

Extrapolation extrapolate_to_zero(std::span<const double> h, std::span<const double> f) {
    if (h.size() != f.size() || h.size() < 2)
        throw DomainError("extrapolation needs at least two matching samples");
    const std::size_t n = h.size();
    std::vector<double> row(f.begin(), f.end());
    double previous = row[0];
    double current = row[0];
    // Neville's scheme evaluated at 0; after pass j, row[i] interpolates points i-j..i.
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = n - 1; i >= j; --i) {
            row[i] = (h[i - j] * row[i] - h[i] * row[i - 1]) / (h[i - j] - h[i]);
            if (i == j) break;
        }
        previous = current;
        current = row[j];
    }
    return {row[n - 1], std::abs(row[n - 1] - previous)};
}

double delta_prime_at_zero(Rho rho, double eps_crit) {
    static constexpr double taus[] = {1e-4, 1e-3, 1e-2};
    const auto deltas = delta_on_grid(rho, taus, {}, eps_crit);
    std::vector<double> h, f;
    for (int i = 2; i >= 0; --i) {
        h.push_back(taus[i]);
        f.push_back(deltas[i] / taus[i]);
    }
    const Extrapolation e = extrapolate_to_zero(h, f);
    if (e.change > 1e-6)
        throw NumericalError("delta'(0) extrapolation did not settle: successive estimates differ by " +
                             std::to_string(e.change));
    return e.value;
}

double delta_second_at_zero(Rho rho, double eps_crit) {
    const double slope = delta_prime_at_zero(rho, eps_crit);
    static constexpr double taus[] = {0.005, 0.01, 0.02, 0.04};
    const auto deltas = delta_on_grid(rho, taus, {}, eps_crit);
    std::vector<double> h, f;
    for (int i = 3; i >= 0; --i) {
        h.push_back(taus[i]);
        f.push_back((deltas[i] / taus[i] - slope) / taus[i]);
    }
    const Extrapolation e = extrapolate_to_zero(h, f);
    if (e.change > 1e-5)
        throw NumericalError("delta''(0) extrapolation did not settle: successive estimates differ by " +
                             std::to_string(e.change));
    return 2.0 * e.value;
}

double bound_ratio(double delta, double tau) { return std::abs(delta) / std::min(tau / 35.0, 1.0); }

std::vector<SweepCell> sweep_delta(std::span<const double> rho_grid, std::span<const double> tau_grid,
                                   const PathConfig& cfg, double eps_crit) {
    require_increasing(rho_grid, "rho grid", false);
    require_increasing(tau_grid, "tau grid", false);
    std::vector<SweepCell> cells;
    cells.reserve(rho_grid.size() * tau_grid.size());
    for (double r : rho_grid) {
        const std::size_t first = cells.size();
        for (double t : tau_grid) cells.push_back(SweepCell{r, t, std::nullopt, std::nullopt, {}});
        try {
            DescentPath path(saddle(Rho(r), eps_crit), cfg);
            for (std::size_t j = 0; j < tau_grid.size(); ++j) {
                SweepCell& cell = cells[first + j];
                try {
                    const PathSample s = path.advance_to(cell.tau);
                    cell.delta = s.delta;
                    cell.bound_ratio = bound_ratio(s.delta, cell.tau);
                } catch (const NumericalError& e) {
                    for (std::size_t k = j; k < tau_grid.size(); ++k) cells[first + k].error = e.what();
                    break;
                }
            }
        } catch (const std::exception& e) {
            for (std::size_t k = first; k < cells.size(); ++k)
                if (!cells[k].delta) cells[k].error = e.what();
        }
    }
    return cells;
}

}  // namespace hw
