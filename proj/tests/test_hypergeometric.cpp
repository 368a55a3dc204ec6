#include <cmath>
#include <stdexcept>
#include <random>
#include <vector>

#include "doctest.h"

#include "blowlab/hypergeometric.hpp"
#include "oracles.hpp"

using namespace blowlab;

TEST_CASE("series basics and closed forms") {
    CHECK(gauss_2f1(0.7, 1.3, 2.1, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    // F(1,1,2;z) = -log(1-z)/z
    CHECK(gauss_2f1(1.0, 1.0, 2.0, 0.5) ==
          doctest::Approx(-std::log(0.5) / 0.5).epsilon(1e-13));
    // b = c collapses to (1-z)^{-a}
    CHECK(gauss_2f1(1.7, 2.2, 2.2, 0.3) ==
          doctest::Approx(std::pow(0.7, -1.7)).epsilon(1e-13));

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ua(0.1, 3.0), uc(0.4, 5.0), uz(0.0, 0.95);
    for (int i = 0; i < 100; ++i) {
        const double a = ua(rng), b = ua(rng), c = uc(rng), z = uz(rng);
        const double ref = oracles::hyp2f1_reference(a, b, c, z);
        CHECK(gauss_2f1(a, b, c, z) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("series domain and convergence errors") {
    CHECK_THROWS_AS(gauss_2f1(1, 1, 2, 1.0), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(1, 1, 2, -0.1), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(1, 1, -2.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(1, 1, 0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(2, 3, 1.5, 1.0 - 1e-8), std::runtime_error);
}

TEST_CASE("quadratic transformation identity") {
    CHECK(quadratic_identity_residual(0.8, 1.7, 0.0) == doctest::Approx(0.0));
    CHECK(quadratic_identity_residual(1.0, 1.5, 0.25) < 1e-12);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ua(0.2, 2.5), uc(0.8, 4.0), uz(0.0, 0.9);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i)
        worst = std::max(worst, quadratic_identity_residual(ua(rng), uc(rng), uz(rng)));
    CHECK(worst < 1e-10);
}

TEST_CASE("self-similar solution: axis values and closed form") {
    for (int N : {2, 3, 4}) {
        PhiSpec spec{1.3, 0.0, N};
        for (double t : {0.7, 1.0, 3.5})
            CHECK(phi(spec, 0.0, t) == doctest::Approx(std::pow(t, -1.3)).epsilon(1e-13));
    }
    // beta = N collapses to t (t^2-r^2)^{-(N+1)/2}; checked across both series forms
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> uz(0.0, 0.97), ut(0.4, 5.0);
    for (int N : {2, 3, 4}) {
        PhiSpec spec{double(N), 0.0, N};
        for (int i = 0; i < 300; ++i) {
            const double t = ut(rng);
            const double r = uz(rng) * t;
            const double closed = t * std::pow(t * t - r * r, -0.5 * (N + 1));
            CHECK(phi(spec, r, t) == doctest::Approx(closed).epsilon(1e-10));
        }
    }
}

TEST_CASE("the two series forms agree across the switch point") {
    // evaluate both hypergeometric forms directly near rho = 1/2
    for (int N : {2, 3}) {
        for (double beta : {0.6, 1.7, 3.2}) {
            for (double rho : {0.35, 0.45, 0.499, 0.501, 0.55, 0.7}) {
                const double t = 1.3, r = rho * t;
                const double remark =
                    std::pow(t, -beta) *
                    gauss_2f1(0.5 * beta, 0.5 * (beta + 1.0), 0.5 * N, rho * rho);
                const double direct =
                    std::pow(t + r, -beta) *
                    gauss_2f1(beta, 0.5 * (N - 1.0), N - 1.0, 2.0 * r / (t + r));
                CHECK(remark == doctest::Approx(direct).epsilon(1e-10));
                PhiSpec spec{beta, 0.0, N};
                CHECK(phi(spec, r, t) == doctest::Approx(remark).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("shifted family scales the unshifted one") {
    PhiSpec shifted{1.4, 2.0, 3};
    PhiSpec plain{1.4, 0.0, 3};
    const double lam = 2.0;
    for (double t : {0.0, 0.8, 2.5})
        for (double rho : {0.0, 0.4, 0.8}) {
            const double r = rho * (lam + t);
            CHECK(phi(shifted, r, t) ==
                  doctest::Approx(std::pow(lam, 1.4) * phi(plain, r, lam + t))
                      .epsilon(1e-13));
        }
}

TEST_CASE("time derivative: ladder identity and finite differences") {
    PhiSpec spec{1.3, 0.0, 3};
    // on the axis the derivative is -beta t^{-beta-1}
    CHECK(phi_dt(spec, 0.0, 2.0) ==
          doctest::Approx(-1.3 * std::pow(2.0, -2.3)).epsilon(1e-13));

    std::mt19937 rng(31);
    std::uniform_real_distribution<double> uz(0.0, 0.9), ut(0.5, 4.0);
    for (const PhiSpec& s : {PhiSpec{1.3, 0.0, 3}, PhiSpec{0.8, 0.0, 2},
                             PhiSpec{2.5, 1.5, 3}}) {
        for (int i = 0; i < 60; ++i) {
            const double t = ut(rng);
            const double r = uz(rng) * (s.lambda + t) * 0.95;
            const double h = 1e-5;
            const double fd = (phi(s, r, t + h) - phi(s, r, t - h)) / (2.0 * h);
            const double an = phi_dt(s, r, t);
            CHECK(std::fabs(an - fd) / std::fabs(an) < 1e-6);
            CHECK(an < 0.0);  // monotone decay in time
        }
    }

    // beta = N = 3: hand derivative of t (t^2-r^2)^{-2}
    PhiSpec v3{3.0, 0.0, 3};
    for (double rho : {0.1, 0.5, 0.8}) {
        const double t = 1.7, r = rho * t;
        const double d = t * t - r * r;
        const double hand = (d - 4.0 * t * t) / (d * d * d);
        CHECK(phi_dt(v3, r, t) == doctest::Approx(hand).epsilon(1e-10));
    }
}

TEST_CASE("radial derivative matches finite differences") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> uz(0.05, 0.9), ut(0.5, 4.0);
    for (const PhiSpec& s : {PhiSpec{1.3, 0.0, 3}, PhiSpec{0.9, 0.0, 2},
                             PhiSpec{2.2, 1.5, 3}}) {
        for (int i = 0; i < 60; ++i) {
            const double t = ut(rng);
            const double r = uz(rng) * (s.lambda + t) * 0.95;
            const double h = 1e-5 * (s.lambda + t);
            const double fd = (phi(s, r + h, t) - phi(s, r - h, t)) / (2.0 * h);
            const double an = phi_dr(s, r, t);
            CHECK(std::fabs(an - fd) <=
                  1e-6 * std::max(std::fabs(an), std::fabs(phi(s, r, t))));
        }
    }
}

TEST_CASE("special closed-form solution") {
    CHECK(special_w(1, 3.0, 0.5, 1.0) == doctest::Approx(1.0));
    CHECK(special_w_dt(1, 3.0, 0.5, 1.0) == doctest::Approx(0.0));
    // flat initial limit for large shifts
    const double lam = 1e6;
    for (int N : {2, 3, 4})
        CHECK(std::fabs(special_w(N, lam, 1.0, 0.0) - 1.0) < 1e-5);
    // solves the radial wave equation, checked by finite differences
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> uz(0.1, 0.6), ut(0.2, 2.0);
    for (int N : {2, 3}) {
        const double lam2 = 2.0;
        for (int i = 0; i < 40; ++i) {
            const double t = ut(rng);
            const double r = uz(rng) * (lam2 + t);
            const double h = 1e-4;
            auto w = [&](double rr, double tt) { return special_w(N, lam2, rr, tt); };
            const double dtt = (w(r, t + h) - 2 * w(r, t) + w(r, t - h)) / (h * h);
            const double drr = (w(r + h, t) - 2 * w(r, t) + w(r - h, t)) / (h * h);
            const double dr1 = (w(r + h, t) - w(r - h, t)) / (2 * h);
            const double res = dtt - drr - (N - 1.0) / r * dr1;
            CHECK(std::fabs(res) < 1e-6 * std::fabs(w(r, t)));
        }
    }
    CHECK_THROWS_AS(special_w(3, 1.0, 2.0, 0.5), std::domain_error);
}

TEST_CASE("wave identity residual shrinks at second order") {
    std::vector<std::pair<double, double>> pts;
    for (double rho : {0.15, 0.3, 0.45})
        for (double t : {1.0, 1.6, 2.4}) pts.push_back({rho * t, t});

    // dimensions with a nonvanishing second-order truncation term
    for (const PhiSpec& s : {PhiSpec{0.9, 0.0, 2}, PhiSpec{1.4, 0.0, 2},
                             PhiSpec{2.4, 0.0, 4}}) {
        const double r1 = wave_identity_residual(s, pts, 4e-3);
        const double r2 = wave_identity_residual(s, pts, 2e-3);
        const double order = std::log2(r1 / r2);
        CHECK(order == doctest::Approx(2.0).epsilon(0.15));
    }
    // three dimensions are superconvergent: r*phi obeys the line wave
    // equation, which cancels the h^2 truncation term identically, so the
    // residual sits at the series-evaluation noise floor
    for (const PhiSpec& s : {PhiSpec{3.0, 0.0, 3}, PhiSpec{1.7, 0.0, 3}})
        CHECK(wave_identity_residual(s, pts, 4e-3) < 1e-8);

    // the closed-form member stays small outright at h = 1e-4
    PhiSpec v{3.0, 0.0, 3};
    CHECK(wave_identity_residual(v, pts, 1e-4) < 1e-5);

    // stencils must stay inside the cone and away from the axis
    std::vector<std::pair<double, double>> bad{{1e-5, 1.0}};
    CHECK_THROWS_AS(wave_identity_residual(v, bad, 1e-3), std::domain_error);
}

TEST_CASE("envelope constants") {
    // below the threshold index the plain envelope applies and its floor is 1
    PhiSpec low{0.4, 0.0, 3};
    const BoundConstants bc = estimate_bound_constants(low, 201, 3);
    CHECK(bc.lower >= 1.0 - 1e-9);
    CHECK(bc.lower == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(bc.upper >= bc.lower);
    CHECK(bc.upper < 10.0);

    // above it the cone-weighted envelope stays positive and finite
    PhiSpec high{3.0, 0.0, 3};
    const BoundConstants bc2 = estimate_bound_constants(high, 201, 3);
    CHECK(bc2.lower > 0.0);
    CHECK(std::isfinite(bc2.upper));
    CHECK(bc2.lower <= 1.0 + 1e-9);  // the z -> 0 limit of the quantity is 1
    CHECK(bc2.upper >= 1.0 - 1e-9);

    PhiSpec boundary{1.0, 0.0, 3};
    CHECK_THROWS_AS(estimate_bound_constants(boundary, 64, 2), std::domain_error);
}

TEST_CASE("cone refusal") {
    PhiSpec spec{1.0, 0.0, 3};
    CHECK_THROWS_AS(phi(spec, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(phi(spec, 1.0 + 1e-15, 1.0), std::domain_error);
    CHECK_NOTHROW(phi(spec, 0.999, 1.0));
    PhiSpec shifted{1.0, 2.0, 3};
    CHECK_NOTHROW(phi(shifted, 1.5, 0.0));
    CHECK_THROWS_AS(phi(shifted, 2.0, 0.0), std::domain_error);
}
