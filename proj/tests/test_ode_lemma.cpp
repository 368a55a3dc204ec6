#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "blowlab/ode_lemma.hpp"

using namespace blowlab;

TEST_CASE("segment integral closed forms") {
    CHECK(segment_integral(2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(segment_integral(3.0) == doctest::Approx(1.0).epsilon(1e-14));
    // generic value against direct evaluation of the antiderivative
    const double p2 = 2.5;
    CHECK(segment_integral(p2) ==
          doctest::Approx((1.0 - std::pow(0.5, 2.0 - p2)) / (2.0 - p2)).epsilon(1e-14));
}

TEST_CASE("bound constant pinned by hand") {
    // p1 = p2 = 2, K1 = K2 = 1: the constant collapses to 4 / log 2
    OdiParams params{0.1, 1.0, 1.0, 2.0, 2.0, 3.0};
    const LifespanBound bound = lifespan_bound(params);
    CHECK(bound.K3 == doctest::Approx(4.0 / std::log(2.0)).epsilon(1e-14));
    CHECK(bound.log_bound ==
          doctest::Approx(std::max(4.0 * std::log(3.0), bound.K3 / 0.1)).epsilon(1e-14));

    // equal exponents give a delta power of p-1
    for (double p : {2.0, 2.5, 3.0}) {
        OdiParams eq{0.05, 1.0, 1.0, p, p, 3.0};
        const double expo = (eq.p1 - 1.0) / (eq.p1 - eq.p2 + 1.0);
        CHECK(expo == doctest::Approx(p - 1.0));
        const LifespanBound b = lifespan_bound(eq);
        CHECK(b.log_bound == doctest::Approx(b.K3 * std::pow(0.05, -(p - 1.0))));
    }
}

TEST_CASE("hypothesis violations are refused") {
    OdiParams bad{0.1, 1.0, 1.0, 2.0, 3.2, 3.0};  // p2 >= p1 + 1
    CHECK_THROWS_AS(lifespan_bound(bad), std::domain_error);
    OdiParams bad2{0.1, 1.0, 1.0, 2.0, 2.0, 1.5};  // t0 <= 2
    CHECK_THROWS_AS(lifespan_bound(bad2), std::domain_error);
    OdiParams bad3{-0.1, 1.0, 1.0, 2.0, 2.0, 3.0};
    CHECK_THROWS_AS(extremal_ode_simulate(bad3), std::domain_error);
}

TEST_CASE("the constant does not depend on delta") {
    OdiParams a{0.2, 1.3, 0.7, 2.5, 2.0, 3.0};
    OdiParams b = a;
    b.delta = 0.01;
    CHECK(lifespan_bound(a).K3 == lifespan_bound(b).K3);  // bitwise
}

TEST_CASE("extremal trajectory blows up below the bound") {
    for (double delta : {0.2, 0.1, 0.05}) {
        for (auto [p1, p2] : {std::pair{2.0, 2.0}, std::pair{3.0, 2.0}}) {
            OdiParams params{delta, 1.0, 1.0, p1, p2, 3.0};
            const LifespanBound bound = lifespan_bound(params);
            const OdeBlowup blow = extremal_ode_simulate(params, 1e-8);
            CHECK(blow.log_T <= bound.log_bound);
            CHECK(blow.log_T > std::log(params.t0));
        }
    }
}

TEST_CASE("larger forcing blows up sooner") {
    OdiParams base{0.2, 1.0, 1.0, 2.5, 2.0, 3.0};
    double prev = 0.0;
    for (double delta : {0.4, 0.2, 0.1, 0.05}) {
        OdiParams params = base;
        params.delta = delta;
        const double logT = extremal_ode_simulate(params, 1e-8).log_T;
        CHECK(logT > prev);
        prev = logT;
    }
}

TEST_CASE("integration converges under tolerance halving") {
    OdiParams params{0.05, 1.0, 1.0, 2.0, 2.0, 3.0};
    const double t1 = extremal_ode_simulate(params, 1e-6).log_T;
    const double t2 = extremal_ode_simulate(params, 5e-7).log_T;
    CHECK(std::fabs(t1 - t2) / t2 < 0.01);
}

TEST_CASE("blow-up scale follows the predicted delta power") {
    // two-point slope of log log T against log delta approaches the bound's
    // exponent as delta shrinks
    OdiParams params{1.0, 1.0, 1.0, 2.0, 2.0, 3.0};
    auto logT = [&](double d) {
        OdiParams p = params;
        p.delta = d;
        return extremal_ode_simulate(p, 1e-9).log_T;
    };
    const double slope = (std::log(logT(0.05)) - std::log(logT(0.02))) /
                         (std::log(0.05) - std::log(0.02));
    const double predicted = -(params.p1 - 1.0) / (params.p1 - params.p2 + 1.0);
    CHECK(std::fabs(slope - predicted) <= 0.1 * std::fabs(predicted));
}
