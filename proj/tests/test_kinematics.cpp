#include <cmath>

#include "doctest.h"
#include "relboltz/frames.hpp"
#include "relboltz/kinematics.hpp"
#include "relboltz/rng.hpp"

using namespace relboltz;

TEST_CASE("energy: closed-form values and bounds")
{
    CHECK(energy(Vec(0.0, 0.0, 0.0), 1.0) == doctest::Approx(1.0));
    CHECK(energy(Vec(1.0, 0.0, 0.0), 1.0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(energy(Vec(3.0, 4.0, 0.0), 5.0) == doctest::Approx(std::sqrt(50.0)));

    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        const Vec p = rng.normal_vec(3, 2.0);
        const double c = 1.0 + 9.0 * rng.uniform();
        const double e = energy(p, c);
        CHECK(e >= c);
        CHECK(e >= norm(p));
    }
    CHECK_THROWS_AS(energy(Vec(std::nan(""), 0.0, 0.0), 1.0), std::domain_error);
}

TEST_CASE("lorentz_inner: mass shell and direct values")
{
    const FourMomentum P = four_momentum(Vec(1.0, 0.0, 0.0), 1.0);
    const FourMomentum Q = four_momentum(Vec(-1.0, 0.0, 0.0), 1.0);
    const FourMomentum O = four_momentum(Vec(0.0, 0.0, 0.0), 1.0);
    CHECK(lorentz_inner(P, Q) == doctest::Approx(-3.0));
    CHECK(lorentz_inner(P, O) == doctest::Approx(-std::sqrt(2.0)));
    CHECK(lorentz_inner(P, Q) == doctest::Approx(lorentz_inner(Q, P)));

    Rng rng(8);
    for (int i = 0; i < 2000; ++i) {
        const int dim = (i % 2) ? 2 : 3;
        const double c = (i % 3) ? 1.0 : 50.0;
        const FourMomentum R = four_momentum(rng.normal_vec(dim, 2.0), c);
        CHECK(lorentz_inner(R, R) == doctest::Approx(-c * c).epsilon(1e-12));
    }

    const FourMomentum P2 = four_momentum(Vec(1.0, 0.0), 1.0);
    CHECK_THROWS_AS(lorentz_inner(P, P2), std::invalid_argument);
}

TEST_CASE("invariants: s and g closed forms, stable vs naive route")
{
    SUBCASE("coincident momenta") {
        const auto inv = invariants(Vec(0.3, -0.7, 0.1), Vec(0.3, -0.7, 0.1), 2.0);
        CHECK(inv.g == doctest::Approx(0.0));
        CHECK(inv.s == doctest::Approx(16.0));
    }
    SUBCASE("head-on pair") {
        const auto inv = invariants(Vec(1.0, 0.0, 0.0), Vec(-1.0, 0.0, 0.0), 1.0);
        CHECK(inv.g == doctest::Approx(2.0));
        CHECK(inv.s == doctest::Approx(8.0));
    }
    SUBCASE("one particle at rest") {
        const auto inv = invariants(Vec(1.0, 0.0, 0.0), Vec(0.0, 0.0, 0.0), 1.0);
        CHECK(inv.s == doctest::Approx(2.0 * (std::sqrt(2.0) + 1.0)));
        CHECK(inv.g == doctest::Approx(std::sqrt(2.0 * (std::sqrt(2.0) - 1.0))));
    }
    SUBCASE("difference-of-squares form agrees with the inner-product form") {
        Rng rng(9);
        for (int i = 0; i < 5000; ++i) {
            const int dim = (i % 2) ? 2 : 3;
            const double c = (i % 4 == 0) ? 100.0 : 1.0 + 3.0 * rng.uniform();
            const Vec p = rng.normal_vec(dim, 1.5);
            const Vec q = rng.normal_vec(dim, 1.5);
            const auto inv = invariants(p, q, c);
            const double naive_s =
                2.0 * (-lorentz_inner(four_momentum(p, c), four_momentum(q, c)) + c * c);
            CHECK(inv.s == doctest::Approx(naive_s).epsilon(1e-10));
        }
    }
    SUBCASE("lower-bound sandwich") {
        Rng rng(10);
        for (int i = 0; i < 10000; ++i) {
            const int dim = (i % 2) ? 2 : 3;
            const double c = (i % 2) ? 1.0 : 10.0;
            const Vec p = rng.normal_vec(dim, 1.5);
            const Vec q = rng.normal_vec(dim, 1.5);
            const auto inv = invariants(p, q, c);
            const double d = norm(p - q);
            CHECK(inv.g <= d * (1.0 + 1e-12));
            CHECK(inv.g >=
                  c * d / std::sqrt(energy(p, c) * energy(q, c)) * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("scattering_angle: trivial collisions and the CM quarter turn")
{
    const Vec p(1.0, 0.0, 0.0), q(-1.0, 0.0, 0.0);
    CHECK(scattering_angle(p, q, p, q, 1.0) == doctest::Approx(0.0));
    CHECK(scattering_angle(p, q, q, p, 1.0) == doctest::Approx(M_PI));

    Vec po, qo;
    cm_post_collision(p, q, Vec(0.0, 1.0, 0.0), 1.0, po, qo);
    CHECK(scattering_angle(p, q, po, qo, 1.0) == doctest::Approx(M_PI / 2));

    CHECK_THROWS_AS(scattering_angle(p, p, p, p, 1.0), std::domain_error);
}

TEST_CASE("moller_velocity: closed values, two published forms, flux bound")
{
    CHECK(moller_velocity(Vec(0.5, 0.5, 0.0), Vec(0.5, 0.5, 0.0), 1.0) ==
          doctest::Approx(0.0));
    CHECK(moller_velocity(Vec(1.0, 0.0, 0.0), Vec(-1.0, 0.0, 0.0), 1.0) ==
          doctest::Approx(std::sqrt(2.0) / 2));
    CHECK(moller_velocity(Vec(1.0, 0.0, 0.0), Vec(0.0, 0.0, 0.0), 1.0) ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));

    Rng rng(11);
    for (int i = 0; i < 5000; ++i) {
        const int dim = (i % 2) ? 2 : 3;
        const double c = (i % 3) ? 1.5 : 20.0;
        const Vec p = rng.normal_vec(dim, 1.5);
        const Vec q = rng.normal_vec(dim, 1.5);
        const double v1 = moller_velocity(p, q, c);
        const double v2 = moller_velocity_root_form(p, q, c);
        CHECK(v1 == doctest::Approx(v2).epsilon(1e-10));
        const double dhat = norm(normalized_velocity(p, c) - normalized_velocity(q, c));
        if (dhat > 1e-12) CHECK(v1 / dhat <= 0.5 + 1e-12);
    }
}

TEST_CASE("normalized_velocity: values, subluminal bound, difference estimate")
{
    CHECK(norm(normalized_velocity(Vec(0.0, 0.0, 0.0), 1.0)) == doctest::Approx(0.0));
    const Vec ph = normalized_velocity(Vec(3.0, 4.0, 0.0), 5.0);
    CHECK(ph[0] == doctest::Approx(3.0 / std::sqrt(2.0)));
    CHECK(ph[1] == doctest::Approx(4.0 / std::sqrt(2.0)));

    const Vec p10 = normalized_velocity(Vec(1.0, 0.0, 0.0), 10.0);
    CHECK(p10[0] == doctest::Approx(0.995037).epsilon(1e-6));
    CHECK(norm(p10 - Vec(1.0, 0.0, 0.0)) == doctest::Approx(0.0049629).epsilon(1e-4));

    Rng rng(12);
    for (int i = 0; i < 5000; ++i) {
        const int dim = (i % 2) ? 2 : 3;
        const double c = 1.0 + 9.0 * rng.uniform();
        const Vec p = rng.normal_vec(dim, 3.0);
        const Vec h = normalized_velocity(p, c);
        CHECK(norm(h) < c);
        CHECK(norm(h - p) <= (1.0 + std::pow(norm(p), 3)) / (c * c) * (1.0 + 1e-12));
    }
}

TEST_CASE("check_conservation: identity and map residuals")
{
    const Vec p(0.4, -0.2, 0.9), q(-0.1, 0.5, 0.2);
    CHECK(check_conservation(p, q, p, q, 1.0, 0.0).residual == doctest::Approx(0.0));

    Rng rng(13);
    for (int i = 0; i < 5000; ++i) {
        const int dim = (i % 2) ? 2 : 3;
        const double c = (i % 3) ? 1.0 : 100.0;
        const Vec a = rng.normal_vec(dim, 1.5);
        const Vec b = rng.normal_vec(dim, 1.5);
        const Vec w = rng.unit_vec(dim);
        CHECK(check_conservation(make_event(a, b, w, c, Frame::GS), 1e-10).pass);
        CHECK(check_conservation(make_event(a, b, w, c, Frame::CM), 1e-10).pass);
        CHECK(check_conservation(make_event(a, b, w, c, Frame::NewtonOmega), 1e-12).pass);
        CHECK(check_conservation(make_event(a, b, w, c, Frame::NewtonSigma), 1e-12).pass);
    }
}
