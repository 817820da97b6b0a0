#include <doctest.h>

#include <cmath>
#include <random>

#include "fde/equation.hpp"
#include "fde/quad.hpp"
#include "fde/trajectory.hpp"

using namespace fde;

TEST_CASE("coefficient kinds evaluate and extend constantly") {
    CoeffFunction c = CoeffFunction::constant(3.5);
    CHECK(c(-100.0) == 3.5);
    CHECK(c.kind() == CoeffKind::constant);

    CoeffFunction t = CoeffFunction::table({0.0, 1.0, 2.0}, {1.0, 3.0, 2.0});
    CHECK(t(0.5) == doctest::Approx(2.0));
    CHECK(t(-5.0) == 1.0);   // constant beyond the sampled range
    CHECK(t(10.0) == 2.0);
    CHECK(t.kind() == CoeffKind::table);

    CoeffFunction s = CoeffFunction::step_left(0.0, 1.0, 0.0);
    CHECK(s(0.0) == 1.0);
    CHECK(s(1e-9) == 0.0);

    CoeffFunction mu = CoeffFunction::retarded_by(CoeffFunction::constant(0.3));
    CHECK(mu(2.0) == doctest::Approx(1.7));
    CHECK(mu.kind() == CoeffKind::builtin);
}

TEST_CASE("checked flags reject invalid values at evaluation") {
    CoeffFunction bad = CoeffFunction::constant(-1.0).nonnegative();
    CHECK_THROWS_AS(bad(0.0), std::domain_error);

    // a table mapping t to t+1 is not a retarded deviation
    CoeffFunction ahead = CoeffFunction::table({0.0, 1.0}, {1.0, 2.0}).retarded();
    CHECK_THROWS_AS(ahead(0.5), std::domain_error);
    CoeffFunction ok = CoeffFunction::retarded_by(CoeffFunction::constant(0.0)).retarded();
    CHECK(ok(4.0) == 4.0);
}

TEST_CASE("adaptive quadrature matches closed forms") {
    CHECK(integrate([](double) { return 1.0; }, 0.0, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-11));
    // signed orientation
    CHECK(integrate([](double) { return 2.0; }, 1.0, 0.0) == doctest::Approx(-2.0));
    // kinked integrand (piecewise-linear table)
    CoeffFunction t = CoeffFunction::table({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
    CHECK(integrate(t, 0.0, 2.0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("backward antiderivative agrees with direct quadrature") {
    CoeffFunction p = CoeffFunction::phi(0.0);
    BackwardAntiderivative anti(p, -40.0, 0.0, 0.01);
    for (double t : {-0.37, -1.0, -7.3, -25.0}) {
        CHECK(anti.from(t) == doctest::Approx(integrate(p, t, 0.0, 1e-12)).epsilon(1e-10));
    }
    // tails beyond the grid
    CHECK(anti.from(-80.0) == doctest::Approx(integrate(p, -80.0, 0.0, 1e-12)).epsilon(1e-9));
}

TEST_CASE("theta evaluation: constant extension on both sides") {
    Trajectory five = Trajectory::constant(5.0, 0.0, 1.0);
    CHECK(theta_eval(five, -3.0) == 5.0);
    CHECK(theta_eval(five, 0.4) == 5.0);
    CHECK(theta_eval(five, 99.0) == 5.0);

    Trajectory id = Trajectory::sample([](double t) { return t; },
                                       [](double) { return 1.0; }, 0.0, 1.0, 16);
    CHECK(theta_eval(id, 2.0) == 1.0);   // right-endpoint extension
    CHECK(theta_eval(id, -1.0) == 0.0);
    CHECK(theta_eval(id, 0.25) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("dense output reproduces a smooth function off-knot") {
    Trajectory s = Trajectory::sample([](double t) { return std::sin(t); },
                                      [](double t) { return std::cos(t); }, 0.0, M_PI, 2000);
    CHECK(std::abs(theta_eval(s, M_PI / 2.0) - 1.0) < 1e-6);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, M_PI);
    for (int i = 0; i < 200; ++i) {
        double t = dist(rng);
        CHECK(std::abs(s.value(t) - std::sin(t)) < 1e-6);
        CHECK(std::abs(s.derivative(t) - std::cos(t)) < 1e-4);
    }
}

TEST_CASE("theta idempotence beyond the domain") {
    Trajectory s = Trajectory::sample([](double t) { return t * t; },
                                      [](double t) { return 2.0 * t; }, -1.0, 2.0, 64);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> far(2.0, 500.0);
    for (int i = 0; i < 100; ++i) {
        double t = far(rng);
        CHECK(s.value(t) == s.back_value());
        CHECK(s.value(-t) == s.front_value());
        CHECK(s.derivative(t + 1.0) == 0.0);
    }
}

TEST_CASE("derivative at knots uses the right segment") {
    Trajectory tr = Trajectory::point(0.0, 0.0);
    tr.append_segment(1.0, 1.0, 1.0, 1.0);   // slope 1
    tr.append_segment(2.0, 3.0, 2.0, 2.0);   // slope 2, jump at the knot
    CHECK(tr.derivative(1.0) == doctest::Approx(2.0));
    CHECK(tr.derivative(2.0) == doctest::Approx(2.0));
    CHECK(tr.value(1.0) == 1.0);
}

TEST_CASE("psi clamp projects onto the band") {
    CHECK(psi_clamp(1.5, 1.0) == 1.0);
    CHECK(psi_clamp(-0.2, 1.0) == 0.0);
    CHECK(psi_clamp(0.37, 1.0) == 0.37);
    CHECK_THROWS_AS(psi_clamp(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(psi_clamp(0.5, -1.0), std::invalid_argument);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        double x = dist(rng);
        double y = psi_clamp(x, 2.5);
        CHECK(y >= 0.0);
        CHECK(y <= 2.5);
        if (x >= 0.0 && x <= 2.5) CHECK(y == x);  // identity exactly on the band
    }
}
