#include <cmath>

#include "doctest.h"
#include "relboltz/cross_section.hpp"
#include "relboltz/frames.hpp"
#include "relboltz/rng.hpp"

using namespace relboltz;

TEST_CASE("catalog: published closed forms")
{
    CrossSection hb;
    CHECK(evaluate(hb, 0.3, 1.0, 1.0) == doctest::Approx(1.0));
    hb.constant = 2.5;
    CHECK(evaluate(hb, 5.0, 0.2, 3.0) == doctest::Approx(2.5));

    CrossSection nu;
    nu.kind = SigmaKind::Neutrino;
    CHECK(evaluate(nu, 2.0, 0.7, 1.0) == doctest::Approx(4.0 / M_PI));

    CrossSection isr;
    isr.kind = SigmaKind::Israel; // empty table means b == 1
    CHECK(evaluate(isr, 2.0, 1.0, 1.0) == doctest::Approx(0.05));

    CrossSection mx;
    mx.kind = SigmaKind::MaxwellParticles;
    CHECK(evaluate(mx, 2.0, 1.0, 1.0) == doctest::Approx(0.25));

    CrossSection mo;
    mo.kind = SigmaKind::Moller;
    CHECK_THROWS_AS(evaluate(mo, 1.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(evaluate(mo, 0.0, 1.0, 1.0), std::domain_error);
    CrossSection co;
    co.kind = SigmaKind::Compton;
    CHECK_THROWS_AS(evaluate(co, 1.0, M_PI, 1.0), std::domain_error);

    // nonnegative wherever defined
    Rng rng(51);
    CrossSection kinds[6] = {hb, mo, co, nu, isr, mx};
    for (int i = 0; i < 2000; ++i) {
        const double g = 0.05 + 5.0 * rng.uniform();
        const double theta = 0.05 + (M_PI - 0.1) * rng.uniform();
        const double c = 1.0 + 4.0 * rng.uniform();
        for (const auto& sigma : kinds) CHECK(evaluate(sigma, g, theta, c) >= 0.0);
    }
}

TEST_CASE("angular table interpolation")
{
    AngularTable tbl;
    tbl.theta = {0.0, M_PI / 2, M_PI};
    tbl.value = {1.0, 3.0, 2.0};
    CHECK(tbl(0.0) == doctest::Approx(1.0));
    CHECK(tbl(M_PI / 4) == doctest::Approx(2.0));
    CHECK(tbl(3 * M_PI / 4) == doctest::Approx(2.5));
    CHECK(tbl(10.0) == doctest::Approx(2.0)); // clamped
}

TEST_CASE("envelope_check: hard-ball pass, neutrino failure, israel pass")
{
    std::vector<EnvelopeSamplePoint> sample;
    for (int i = 1; i <= 400; ++i) sample.push_back({2.5 * i, M_PI / 2, 1.0});

    CrossSection hb;
    EnvelopeParams env;
    env.A1 = 1.0;
    env.A2 = 0.0;
    CHECK(envelope_check(hb, env, sample).pass);

    CrossSection nu;
    nu.kind = SigmaKind::Neutrino; // sigma ~ g^2 outgrows the bounded envelope
    EnvelopeParams big = env;
    big.A1 = 100.0;
    CHECK_FALSE(envelope_check(nu, big, sample).pass);

    CrossSection isr;
    isr.kind = SigmaKind::Israel;
    EnvelopeParams soft;
    soft.A1 = 0.0;
    soft.A2 = 0.5; // sigma1 * m / 2
    soft.gamma = 1.0;
    std::vector<EnvelopeSamplePoint> wide = sample;
    for (int i = 1; i <= 100; ++i) wide.push_back({0.01 * i, M_PI / 3, 1.0});
    CHECK(envelope_check(isr, soft, wide).pass);
}

TEST_CASE("h_c: constant part, drift part, domain errors")
{
    const CutoffParams params{1.0, 0.0, 1.0};
    const Vec x(0.5, -0.5, 1.0), p(1.0, 0.0, 0.0), q(0.0, 1.0, 0.0);
    CHECK(h_c(x, p, q, 1.0, 1.0, params) == doctest::Approx(1.0));
    CHECK(h_c(x, p, q, 2.0, 1.0, params) == doctest::Approx(0.25));

    const CutoffParams with_drift{1.0, 0.5, 1.0};
    CHECK(h_c(Vec(0.0, 0.0, 0.0), p, p, 1.0, 1.0, with_drift) ==
          doctest::Approx(1.0)); // phat = qhat kills the drift term
    CHECK_THROWS_AS(h_c(x, p, q, 0.0, 1.0, params), std::domain_error);
}

TEST_CASE("in_cutoff_set: degenerate equality, closed-form branch, large-c saturation")
{
    const CutoffParams params;
    Rng rng(52);
    SUBCASE("p = q always inside") {
        for (int i = 0; i < 200; ++i) {
            const Vec p = rng.normal_vec(3);
            CHECK(in_cutoff_set(rng.unit_vec(3), rng.normal_vec(3), p, p,
                                0.1 + rng.uniform(), 1.0, params));
        }
    }
    SUBCASE("omega orthogonal to p+q splits energies evenly") {
        const Vec p(1.0, 0.2, 0.0), q(-0.4, 0.6, 0.0);
        Vec tot = p + q;
        Vec w = cross3(tot, Vec(0.0, 0.0, 1.0));
        w = (1.0 / norm(w)) * w;
        const double c = 1.0;
        Vec po, qo;
        cm_post_collision(p, q, w, c, po, qo);
        const double e = energy(p, c) + energy(q, c);
        CHECK(energy(po, c) == doctest::Approx(0.5 * e).epsilon(1e-10));
        // membership decided by 1/p0 + 1/q0 - 4/(p0+q0) + h/c^3 >= 0
        const Vec x(0.3, 0.1, 0.0);
        const double t = 0.7;
        const double lhs = 1.0 / energy(p, c) + 1.0 / energy(q, c) - 4.0 / e +
                           h_c(x, p, q, t, c, params) / (c * c * c);
        CHECK(in_cutoff_set(w, x, p, q, t, c, params) == (lhs >= 0.0));
    }
    SUBCASE("every omega is inside for large c") {
        const Vec p = rng.normal_vec(3), q = rng.normal_vec(3), x = rng.normal_vec(3);
        for (int i = 0; i < 1000; ++i)
            CHECK(in_cutoff_set(rng.unit_vec(3), x, p, q, 0.9, 256.0, params));
    }
    SUBCASE("membership invariant under omega -> -omega (outgoing pair swap)") {
        for (int i = 0; i < 500; ++i) {
            const Vec p = rng.normal_vec(3, 1.5), q = rng.normal_vec(3, 1.5);
            const Vec x = rng.normal_vec(3);
            const Vec w = rng.unit_vec(3);
            const double t = 0.2 + rng.uniform();
            const double c = 1.0 + 3.0 * rng.uniform();
            CHECK(in_cutoff_set(w, x, p, q, t, c, params) ==
                  in_cutoff_set(-1.0 * w, x, p, q, t, c, params));
        }
    }
}

TEST_CASE("cutoff_measure: exact full sphere, determinism, saturation along c")
{
    const CutoffParams params;
    const Vec p(0.8, -0.3);
    CHECK(cutoff_measure(Vec(0.4, 0.2), p, p, 0.5, 1.0, params, 2000, 7) == 1.0);

    Rng rng(53);
    const Vec a = rng.normal_vec(2), b = rng.normal_vec(2), x = rng.normal_vec(2);
    const double m1 = cutoff_measure(x, a, b, 0.8, 2.0, params, 5000, 11);
    CHECK(m1 == cutoff_measure(x, a, b, 0.8, 2.0, params, 5000, 11));
    double last = 0.0;
    for (const double c : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0})
        last = cutoff_measure(x, a, b, 0.8, c, params, 5000, 11);
    CHECK(last == 1.0);

    CHECK_THROWS_AS(cutoff_measure(x, a, b, 0.8, 1.0, params, 10, 1),
                    std::invalid_argument);
}

TEST_CASE("c_star_search: trivial pair, the worked example, B scaling")
{
    const CutoffParams params;
    const std::vector<double> grid = {0.125, 0.25, 0.5, 1, 2, 4, 8, 16, 32, 64};

    const Vec p(0.7, 0.1, -0.2);
    const CStarResult trivial = c_star_search(p, p, 1.0, params, grid);
    CHECK(trivial.found);
    CHECK(trivial.empirical == doctest::Approx(0.125));

    const CStarResult ex =
        c_star_search(Vec(1.0, 0.0, 0.0), Vec(0.0, 1.0, 0.0), 1.0, params, grid);
    CHECK(ex.analytic == doctest::Approx(0.5));
    CHECK(ex.analytic_sufficient);
    CHECK(ex.found);
    CHECK(ex.empirical <= 0.5);

    // doubling B halves the analytic sufficient c_*^2
    CutoffParams doubled = params;
    doubled.B = 2.0;
    const CStarResult half =
        c_star_search(Vec(1.0, 0.0, 0.0), Vec(0.0, 1.0, 0.0), 1.0, doubled, grid);
    CHECK(half.analytic * half.analytic ==
          doctest::Approx(0.5 * ex.analytic * ex.analytic));

    Rng rng(54);
    for (int i = 0; i < 20; ++i) {
        const Vec a = rng.normal_vec(3), b = rng.normal_vec(3);
        CHECK(c_star_search(a, b, 1.0, params, grid).analytic_sufficient);
    }
}
