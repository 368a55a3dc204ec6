#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "blowlab/cutoffs.hpp"

using namespace blowlab;

TEST_CASE("plateau, midpoint and support values") {
    CHECK(eta(0.25) == 1.0);
    CHECK(eta(0.5) == 1.0);
    CHECK(eta(1.0) == 0.0);
    CHECK(eta(1.5) == 0.0);
    // symmetry of the chosen transition at the midpoint
    CHECK(eta(0.75) == doctest::Approx(0.5).epsilon(1e-14));
    // monotone across the transition
    double prev = 1.0;
    for (int i = 1; i <= 100; ++i) {
        const double v = eta(0.5 + 0.005 * i);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
    // the starred variant drops the left plateau
    CHECK(eta_star(0.49) == 0.0);
    CHECK(eta_star(0.5) == 1.0);
    CHECK(eta_star(0.75) == eta(0.75));
}

TEST_CASE("analytic derivatives match finite differences") {
    for (double s : {0.55, 0.6, 0.75, 0.85, 0.95}) {
        const double h = 1e-6;
        const double fd1 = (eta(s + h) - eta(s - h)) / (2.0 * h);
        CHECK(eta_d1(s) == doctest::Approx(fd1).epsilon(1e-6));
        const double fd2 = (eta(s + h) - 2.0 * eta(s) + eta(s - h)) / (h * h);
        CHECK(eta_d2(s) == doctest::Approx(fd2).epsilon(2e-4));
    }
    CHECK(eta_d1(0.3) == 0.0);
    CHECK(eta_d1(1.2) == 0.0);
}

TEST_CASE("transition norms are finite and cached") {
    const EtaNorms& n = eta_norms();
    CHECK(n.d1_max > 1.0);  // must exceed the mean slope of the unit drop
    CHECK(n.d1_max < 50.0);
    CHECK(std::isfinite(n.d2_max));
    CHECK(n.d2_eta_max <= n.d2_max);
    CHECK(&eta_norms() == &n);
}

TEST_CASE("window function support is exact by construction") {
    CutoffSpec c{4.0, 8.0};
    CHECK(psi(c, 0.0) == 1.0);
    CHECK(psi(c, 4.0) == 1.0);
    CHECK(psi(c, 8.0) == 0.0);
    CHECK(psi(c, 9.0) == 0.0);
    CHECK(psi_star(c, 3.9) == 0.0);
    CHECK(psi_star(c, 4.0) == 1.0);
    for (double t : {0.0, 2.0, 4.5, 6.0, 7.9, 8.5})
        CHECK(psi_star(c, t) <= psi(c, t));
}

TEST_CASE("derivative envelopes hold across the parameter grid") {
    for (double k : {2.0, 3.0, 4.0, 6.0, 8.0})
        for (double R : {1.0, 4.0, 16.0, 64.0}) {
            const PsiBoundReport rep = psi_derivative_bounds({k, R}, 20001);
            CHECK(rep.ratio_d1 <= 1.0 + 1e-9);
            CHECK(rep.ratio_d2 <= 1.0 + 1e-9);
            CHECK(rep.ratio_d1 > 0.5);  // the bound is close to sharp somewhere
        }
}

TEST_CASE("doubling the window halves the derivative scale") {
    CutoffSpec c1{4.0, 8.0}, c2{4.0, 16.0};
    for (double s : {0.55, 0.7, 0.9}) {
        const double d1 = psi_dt(c1, s * 8.0);
        const double d2 = psi_dt(c2, s * 16.0);
        CHECK(d2 == doctest::Approx(0.5 * d1).epsilon(1e-13));
    }
}

TEST_CASE("window derivative matches finite differences") {
    CutoffSpec c{3.5, 4.0};
    for (double t : {2.2, 2.8, 3.4, 3.9}) {
        const double h = 1e-6;
        const double fd = (psi(c, t + h) - psi(c, t - h)) / (2.0 * h);
        CHECK(psi_dt(c, t) == doctest::Approx(fd).epsilon(1e-6));
        const double fd2 = (psi(c, t + h) - 2.0 * psi(c, t) + psi(c, t - h)) / (h * h);
        CHECK(psi_dtt(c, t) == doctest::Approx(fd2).epsilon(5e-4));
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(psi_derivative_bounds({1.5, 4.0}), std::domain_error);
    CHECK_THROWS_AS(psi_derivative_bounds({4.0, 0.5}), std::domain_error);
}
