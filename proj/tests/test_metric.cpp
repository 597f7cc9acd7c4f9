#include "catch_amalgamated.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <hyperquad/metric.hpp>

#include "oracles.hpp"

using namespace hyperquad;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Frame {
    double t0, j0, j1, t1;
};

Frame random_frame(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> d(lo, hi);
    double v[4] = {d(rng), d(rng), d(rng), d(rng)};
    std::sort(v, v + 4);
    return {v[0], v[1], v[2], v[3]};
}

} // namespace

TEST_CASE("cross_ratio", "[metric]")
{
    CHECK(cross_ratio({Interval(0, 4), Interval(1, 3)}) == 8.0);
    CHECK(cross_ratio({Interval(0, 4), Interval(0, 3)}) == std::numeric_limits<double>::infinity());
    CHECK(cross_ratio({Interval(0, 4), Interval(2, 2)}) == 0.0);
    try {
        cross_ratio({Interval(0, 4), Interval(0, 0)});
        FAIL("expected degenerate frame");
    } catch (const error& e) {
        CHECK(e.kind() == errc::degenerate_frame);
    }
    CHECK_THROWS_AS(CrossRatioFrame(Interval(0, 4), Interval(3, 5)), error);
}

TEST_CASE("hyp_dist", "[metric]")
{
    const Interval T(0, 4);
    CHECK_THAT(hyp_dist(T, 1, 3), WithinAbs(std::log(9.0), 1e-15));
    CHECK_THAT(hyp_dist(T, 1, 3), WithinAbs(2.1972246, 1e-7));
    CHECK(hyp_dist(T, 2.5, 2.5) == 0.0);
    CHECK(hyp_dist(T, 1, 3) == hyp_dist(T, 3, 1));
    try {
        hyp_dist(T, 0, 2);
        FAIL("expected boundary point");
    } catch (const error& e) {
        CHECK(e.kind() == errc::boundary_point);
    }
}

TEST_CASE("hyp_dist = log(1 + D)", "[metric][property]")
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        const Frame f = random_frame(rng, -5, 5);
        const double d = hyp_dist(Interval(f.t0, f.t1), f.j0, f.j1);
        const double D = oracle::cross_ratio(f.t0, f.j0, f.j1, f.t1);
        CHECK_THAT(d, WithinAbs(std::log1p(D), 1e-12 * std::max(1.0, d)));
    }
}

TEST_CASE("hyperbolic metric grows when the ambient interval shrinks", "[metric][property]")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const Frame f = random_frame(rng, -3, 3);
        const Interval T(f.t0, f.t1);
        const Interval Tp(f.t0 + u(rng) * (f.j0 - f.t0), f.t1 - u(rng) * (f.t1 - f.j1));
        const double outer = hyp_dist(T, f.j0, f.j1);
        const double inner = hyp_dist(Tp, f.j0, f.j1);
        CHECK(outer > 0.0);
        CHECK(inner >= outer - 1e-12);
        if (Tp.length() < T.length() * (1 - 1e-6))
            CHECK(inner > outer);
    }
}

TEST_CASE("hyp_density_ratio", "[metric][oracle]")
{
    const Interval J(1, 3), T(0, 4);
    CHECK_THAT(hyp_density_ratio(J, T, 2.0), WithinAbs(2.0, 1e-15));

    // Finite-difference limit of rho_J(x, x+h) / rho_T(x, x+h).
    for (double x : {1.2, 1.7, 2.0, 2.6}) {
        const double h = 1e-6;
        const double fd = hyp_dist(J, x, x + h) / hyp_dist(T, x, x + h);
        CHECK_THAT(hyp_density_ratio(J, T, x), WithinRel(fd, 1e-5));
    }

    CHECK_THAT(hyp_density_ratio(T, T, 0.7), WithinAbs(1.0, 1e-15));
    CHECK(hyp_density_ratio(J, T, J.hi() - 1e-4 * J.length()) > 1e3);
    CHECK_THROWS_AS(hyp_density_ratio(J, T, 1.0), error);
}

TEST_CASE("inclusion contraction", "[metric]")
{
    const LambdaEstimate wide = inclusion_contraction(Interval(1, 3), Interval(0, 4), 512);
    CHECK(wide.exceeds_one());
    CHECK(wide.value > 1.0);

    const LambdaEstimate deep = inclusion_contraction(Interval(1.9, 2.1), Interval(0, 4), 512);
    CHECK(deep.value > wide.value);

    try {
        inclusion_contraction(Interval(0, 3), Interval(0, 4), 64);
        FAIL("expected not compactly contained");
    } catch (const error& e) {
        CHECK(e.kind() == errc::not_compactly_contained);
    }

    SECTION("grid minimum is a minimum over the tested pairs")
    {
        const Interval J(1, 3), T(0, 4);
        const LambdaEstimate e = inclusion_contraction(J, T, 64);
        for (int i = 0; i < 64; ++i)
            for (int j = i + 1; j < 64; j += 7) {
                const double x = 1 + 2 * (i + 0.5) / 64, y = 1 + 2 * (j + 0.5) / 64;
                CHECK(hyp_dist(J, x, y) / hyp_dist(T, x, y) >= e.value);
            }
    }
    SECTION("thread count does not change the estimate")
    {
        const auto a = inclusion_contraction(Interval(0.5, 1.5), Interval(0.1, 2.5), 256, 1);
        const auto b = inclusion_contraction(Interval(0.5, 1.5), Interval(0.1, 2.5), 256, 4);
        CHECK(a.value == b.value);
        CHECK(a.argmin_x == b.argmin_x);
        CHECK(a.argmin_y == b.argmin_y);
    }
}

TEST_CASE("inclusion contraction exceeds one on random compact inclusions", "[metric][property]")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const Frame f = random_frame(rng, -4, 4);
        if (f.j0 - f.t0 < 1e-3 || f.t1 - f.j1 < 1e-3 || f.j1 - f.j0 < 1e-3)
            continue;
        const LambdaEstimate e = inclusion_contraction(Interval(f.j0, f.j1), Interval(f.t0, f.t1), 128);
        CHECK(e.value > 1.0);
    }
}

TEST_CASE("cross-ratio distortion", "[metric]")
{
    SECTION("affine maps preserve cross-ratios")
    {
        auto g = [](double x) { return 2 * x + 1; };
        auto dg = [](double) { return 2.0; };
        CHECK_THAT(cross_ratio_distortion(g, dg, Interval(0, 4), Interval(1, 3)), WithinAbs(1.0, 1e-15));
    }
    SECTION("1/x on (1,4), (2,3)")
    {
        auto g = [](double x) { return 1 / x; };
        auto dg = [](double x) { return -1 / (x * x); };
        CHECK_THAT(oracle::cross_ratio(1.0 / 4, 1.0 / 3, 1.0 / 2, 1.0), WithinAbs(3.0, 1e-14));
        CHECK_THAT(cross_ratio_distortion(g, dg, Interval(1, 4), Interval(2, 3)), WithinAbs(1.0, 1e-14));
    }
    SECTION("quadratic at c = -2.2")
    {
        const MapParams m = analyze(-2.2);
        const Interval T(0.5, 2), J(1, 1.5);
        CHECK_THAT(oracle::cross_ratio(0.5, 1, 1.5, 2), WithinAbs(3.0, 1e-15));
        const double expected = (1.25 * 3.75) / (0.75 * 1.75) / 3.0;
        CHECK_THAT(map_cross_ratio_B(m, T, J), WithinRel(expected, 1e-13));
        CHECK_THAT(map_cross_ratio_B(m, T, J), WithinAbs(1.1905, 1e-4));
    }
    SECTION("collapsed pieces use the derivative")
    {
        const MapParams m = analyze(-2.2);
        const Interval T(0.5, 2);
        // Limit along J_n = (0.5 + 1/n, 1.5) increasing to (0.5, 1.5).
        const double limit = map_cross_ratio_B(m, T, Interval(0.5, 1.5));
        const double near = map_cross_ratio_B(m, T, Interval(0.5 + 1e-7, 1.5));
        CHECK_THAT(limit, WithinRel(near, 1e-6));
        CHECK(std::isfinite(map_cross_ratio_B(m, T, Interval(1.0, 1.0))));
    }
    SECTION("non-monotone frame")
    {
        try {
            map_cross_ratio_B(analyze(-2.2), Interval(-1, 1), Interval(-0.5, 0.5));
            FAIL("expected not monotone");
        } catch (const error& e) {
            CHECK(e.kind() == errc::not_monotone);
        }
    }
}

TEST_CASE("Moebius maps have unit distortion", "[metric][property]")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> coef(-3, 3);
    int tested = 0;
    while (tested < 200) {
        const double a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
        const double det = a * d - b * c;
        if (std::abs(det) < 0.1)
            continue;
        const Frame f = random_frame(rng, -2, 2);
        // Pole must lie outside T with some margin.
        if (c != 0.0) {
            const double pole = -d / c;
            if (pole > f.t0 - 0.2 && pole < f.t1 + 0.2)
                continue;
        }
        if (f.j1 - f.j0 < 1e-3 || f.j0 - f.t0 < 1e-3 || f.t1 - f.j1 < 1e-3)
            continue;
        auto g = [&](double x) { return (a * x + b) / (c * x + d); };
        auto dg = [&](double x) { return det / ((c * x + d) * (c * x + d)); };
        CHECK_THAT(cross_ratio_distortion(g, dg, Interval(f.t0, f.t1), Interval(f.j0, f.j1)),
                   WithinAbs(1.0, 1e-9));
        ++tested;
    }
}

TEST_CASE("negative Schwarzian expands cross-ratios", "[metric][property]")
{
    const MapParams m = analyze(-2.2);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const Frame f = random_frame(rng, m.alpha() / 2, 2 * m.p_plus());
        CHECK(map_cross_ratio_B(m, Interval(f.t0, f.t1), Interval(f.j0, f.j1)) > 1.0 + 1e-9);
    }
}

TEST_CASE("schwarzian", "[metric][oracle]")
{
    const MapParams m = analyze(-2.2);
    CHECK(schwarzian(m, 1.0) == -1.5);
    CHECK(schwarzian(m, 2.0) == -0.375);
    try {
        schwarzian(m, 0.0);
        FAIL("expected critical point");
    } catch (const error& e) {
        CHECK(e.kind() == errc::critical_point);
    }
    auto f = [&](double x) { return evaluate(m, x).value; };
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> d(0.2, 3.0);
    std::bernoulli_distribution sign(0.5);
    for (int i = 0; i < 100; ++i) {
        const double x = sign(rng) ? d(rng) : -d(rng);
        CHECK_THAT(schwarzian(m, x), WithinRel(oracle::schwarzian_fd(f, x, 1e-3), 1e-4));
    }
}

TEST_CASE("lemma36_check", "[metric]")
{
    const MapParams m = analyze(-2.2);
    const Lemma36Check r = lemma36_check(m, Interval(0.5, 2), 1, 1.5);
    CHECK(r.pass);
    CHECK(r.lhs > r.rhs);
    const Interval image(evaluate(m, 0.5).value, evaluate(m, 2.0).value);
    CHECK_THAT(r.lhs, WithinAbs(hyp_dist(image, evaluate(m, 1.0).value, evaluate(m, 1.5).value), 0.0));

    const Lemma36Check same = lemma36_check(m, Interval(0.5, 2), 1.2, 1.2);
    CHECK(same.lhs == 0.0);
    CHECK(same.rhs == 0.0);
    CHECK(same.pass);

    CHECK_THROWS_AS(lemma36_check(m, Interval(-1, 1), 0.2, 0.5), error);

    SECTION("random monotone triples")
    {
        std::mt19937_64 rng(7);
        int passed = 0;
        for (int i = 0; i < 1000; ++i) {
            const Frame f = random_frame(rng, m.alpha() / 2, 2 * m.p_plus());
            passed += lemma36_check(m, Interval(f.t0, f.t1), f.j0, f.j1).pass;
        }
        CHECK(passed == 1000);
    }
}
