#include <doctest.h>

#include <cmath>

#include "hw/saddle.hpp"

using namespace hw;

namespace {

// Plain bisection on [lo, hi], used as an oracle for the saddle solvers.
template <typename F>
double bisect(F f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("Rho rejects non-positive and non-finite values") {
    CHECK_THROWS_AS(Rho{0.0}, DomainError);
    CHECK_THROWS_AS(Rho{-1.0}, DomainError);
    CHECK_THROWS_AS(Rho{std::nan("")}, DomainError);
    CHECK_THROWS_AS(Rho{INFINITY}, DomainError);
    CHECK(Rho(0.5).value() == 0.5);
}

TEST_CASE("regime classification around rho = 1") {
    CHECK(classify(Rho(0.5)) == Regime::SubCritical);
    CHECK(classify(Rho(1.0)) == Regime::Critical);
    CHECK(classify(Rho(1.0 + 5e-7)) == Regime::Critical);
    CHECK(classify(Rho(1.0 - 2e-6)) == Regime::SubCritical);
    CHECK(classify(Rho(1.0 + 2e-6)) == Regime::SuperCritical);
    CHECK(classify(Rho(1.01), 0.1) == Regime::Critical);
    CHECK_THROWS_AS(classify(Rho(1.0), -1.0), DomainError);
}

TEST_CASE("solve_x1 agrees with bisection") {
    for (double r : {1e-4, 0.01, 0.1, 0.5, 0.9, 0.999}) {
        const double x = solve_x1(Rho(r));
        const double oracle = bisect([r](double x) { return r * std::sinh(x) - x; }, 1e-6, 50.0);
        CHECK(x == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(std::abs(r * std::sinh(x) / x - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(solve_x1(Rho(1.0)), DomainError);
}

TEST_CASE("solve_y1 agrees with bisection") {
    CHECK(solve_y1(Rho(1.0)) == kPi);
    for (double r : {1.000001, 1.01, 1.5, 2.0, 3.0, 10.0, 1e3}) {
        const double y = solve_y1(Rho(r));
        // y = pi - z with rho sin z = z, which stays well conditioned as rho -> 1
        const double oracle = kPi - bisect([r](double z) { return r * std::sin(z) - z; }, 1e-9, kPi);
        CHECK(y == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(std::abs(y + r * std::sin(y) - kPi) < 1e-12);
    }
    CHECK_THROWS_AS(solve_y1(Rho(0.5)), DomainError);
}

TEST_CASE("the saddle is a stationary point of h") {
    for (double r : {0.05, 0.3, 0.9, 0.999, 1.0, 1.001, 1.5, 4.0, 10.0}) {
        const SaddleData s = saddle(Rho(r));
        if (s.regime == Regime::Critical) continue;
        CHECK(std::abs(h_prime(s.xi_saddle, r)) < 1e-12 * (1.0 + std::abs(s.xi_saddle)));
        CHECK(s.F == doctest::Approx(h(s.xi_saddle, Rho(r)).real()).epsilon(1e-12));
    }
}

TEST_CASE("rho = 1 closed forms") {
    const SaddleData s = saddle(Rho(1.0));
    CHECK(s.regime == Regime::Critical);
    CHECK(s.g0 == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
    CHECK(s.F == doctest::Approx(kHalfPiSq - 1.0).epsilon(1e-15));
    CHECK(s.G == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(s.h2 == 0.0);
}

TEST_CASE("g0, F and G are continuous through the critical band") {
    const double e = 1e-5;
    CHECK(g0(Rho(1.0 - e)) == doctest::Approx(g0(Rho(1.0))).epsilon(1e-3));
    CHECK(g0(Rho(1.0 + e)) == doctest::Approx(g0(Rho(1.0))).epsilon(1e-3));
    // dF/drho = cosh(X) = -1 at rho = 1
    CHECK((F(Rho(1.0 - e)) - F(Rho(1.0))) / e == doctest::Approx(1.0).epsilon(1e-4));
    CHECK((F(Rho(1.0 + e)) - F(Rho(1.0))) / e == doctest::Approx(-1.0).epsilon(1e-4));
    CHECK(G(Rho(1.0 + e)) == doctest::Approx(G(Rho(1.0))).epsilon(1e-3));
}

TEST_CASE("g0 closed form for rho < 1 matches the unrearranged expression") {
    for (double r : {0.05, 0.2, 0.6}) {
        const double x = solve_x1(Rho(r));
        const double direct = std::sinh(x) * std::sqrt(std::sinh(x)) /
                              std::sqrt(2.0 * (x * std::cosh(x) - std::sinh(x)));
        CHECK(g0(Rho(r)) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("cancellation-free helpers") {
    for (double x : {1e-8, 1e-3, 0.3, 0.49, 0.51, 2.0}) {
        const double a = x * std::cosh(x) - std::sinh(x);
        CHECK(detail::x_cosh_minus_sinh(x) == doctest::Approx(a).epsilon(x < 0.01 ? 1e-3 : 1e-12));
        CHECK(detail::x_cosh_minus_sinh(x) > 0.0);
        const double b = std::sin(x) - x * std::cos(x);
        CHECK(detail::sin_minus_z_cos(x) == doctest::Approx(b).epsilon(x < 0.01 ? 1e-3 : 1e-12));
    }
    CHECK(detail::x_cosh_minus_sinh(1e-4) == doctest::Approx(1e-12 / 3.0).epsilon(1e-8));
    CHECK(detail::sin_minus_z_cos(1e-4) == doctest::Approx(1e-12 / 3.0).epsilon(1e-8));
}
