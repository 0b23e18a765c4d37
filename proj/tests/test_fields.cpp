#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lipform/catalog.hpp"
#include "lipform/errors.hpp"
#include "lipform/field.hpp"
#include "lipform/parse.hpp"
#include "lipform/sample.hpp"

using namespace lipform;

namespace {

// Independent central-difference oracle; never routes through partial().
double fd_partial(const ScalarField& f, int axis, std::vector<double> x, double h)
{
    std::vector<double> lo = x, hi = x;
    hi[static_cast<size_t>(axis)] += h;
    lo[static_cast<size_t>(axis)] -= h;
    return (f(hi) - f(lo)) / (2.0 * h);
}

}  // namespace

TEST_CASE("eval on the primitive set")
{
    const ScalarField a = abs(ScalarField::coordinate(1, 0));
    CHECK(a({-2.0}) == 2.0);

    const ScalarField m = max(ScalarField::coordinate(2, 0), ScalarField::coordinate(2, 1));
    CHECK(m({1.0, 3.0}) == 3.0);

    // x1*x2 - min(x1,x2) at (2,5): 10 - 2 by hand
    const ScalarField x1 = ScalarField::coordinate(2, 0);
    const ScalarField x2 = ScalarField::coordinate(2, 1);
    const ScalarField g = x1 * x2 - min(x1, x2);
    CHECK(g({2.0, 5.0}) == 8.0);
}

TEST_CASE("eval is deterministic and total")
{
    const ScalarField f = parse_expression("abs(x1) * max(x1, x2) - bump(x2, 0, 1)", 2);
    const double v1 = f({0.37, -0.21});
    const double v2 = f({0.37, -0.21});
    CHECK(v1 == v2);
    CHECK(std::isfinite(f({1e12, -1e12})));
}

TEST_CASE("dimension mismatch is a usage error")
{
    const ScalarField f = parse_expression("x1 + x2", 2);
    CHECK_THROWS_AS(f({1.0}), usage_error);
    CHECK_THROWS_AS(f.partial(2, {1.0, 2.0}), usage_error);
    CHECK_THROWS_AS(f.partial(-1, {1.0, 2.0}), usage_error);
}

TEST_CASE("a.e. partials of kinked primitives")
{
    const ScalarField a = abs(ScalarField::coordinate(1, 0));
    CHECK(a.partial(0, {3.0}) == 1.0);
    CHECK(a.partial(0, {-3.0}) == -1.0);
    // kink convention: sign(0) = +1
    CHECK(a.partial(0, {0.0}) == 1.0);

    // max(x1, 2x2) at (0,1): region 2x2 > x1
    const ScalarField f = parse_expression("max(x1, 2*x2)", 2);
    CHECK(f.partial(1, {0.0, 1.0}) == 2.0);
    CHECK(f.partial(1, {0.0, 1.0}) ==
          doctest::Approx(fd_partial(f, 1, {0.0, 1.0}, 1e-6)).epsilon(1e-8));

    // ties take the first-argument branch
    const ScalarField mx = parse_expression("max(x1, x2)", 2);
    CHECK(mx.partial(0, {1.0, 1.0}) == 1.0);
    CHECK(mx.partial(1, {1.0, 1.0}) == 0.0);
    const ScalarField mn = parse_expression("min(x1, x2)", 2);
    CHECK(mn.partial(0, {1.0, 1.0}) == 1.0);
    CHECK(mn.partial(1, {1.0, 1.0}) == 0.0);
}

TEST_CASE("analytic partials match central differences off the kink set")
{
    const SamplePlan plan{Box{{-1, -1}, {1, 1}}, 64, 11, 0.9};
    const ScalarField pl = parse_expression("abs(x1) + max(x1, x2) - 0.5*min(x1, 2*x2)", 2);
    const ScalarField sm = parse_expression("bump(x1, 0, 1.5) * bump(x2, 0.2, 2)", 2);
    for (const auto& x : plan.points()) {
        for (int j = 0; j < 2; ++j) {
            const double h1 = 1e-7;
            // piecewise-linear parts: O(h) agreement; points are jittered off kinks
            CHECK(pl.partial(j, x) == doctest::Approx(fd_partial(pl, j, x, h1)).epsilon(1e-5));
            // smooth parts: O(h^2)
            const double h2 = 1e-5;
            CHECK(sm.partial(j, x) ==
                  doctest::Approx(fd_partial(sm, j, x, h2)).scale(1.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("sum and product rules at jittered points")
{
    const ScalarField f = parse_expression("abs(x1) * bump(x2, 0, 2)", 2);
    const ScalarField g = parse_expression("max(x1, x2) + 0.5*x2^2", 2);
    const SamplePlan plan{Box{{-1, -1}, {1, 1}}, 100, 5, 0.9};
    for (const auto& x : plan.points()) {
        for (int j = 0; j < 2; ++j) {
            const double df = f.partial(j, x);
            const double dg = g.partial(j, x);
            CHECK((f + g).partial(j, x) == doctest::Approx(df + dg).epsilon(1e-10));
            CHECK((f * g).partial(j, x) ==
                  doctest::Approx(df * g(x) + f(x) * dg).epsilon(1e-10));
        }
    }
}

TEST_CASE("finite-difference derivative mode")
{
    const ScalarField f = parse_expression("bump(x1, 0, 2)", 1).with_derivative_mode(
        DerivMode::FiniteDifference);
    const ScalarField g = parse_expression("bump(x1, 0, 2)", 1);
    CHECK(f.partial(0, {0.7}) == doctest::Approx(g.partial(0, {0.7})).epsilon(1e-7));
}

TEST_CASE("sample plans are reproducible and stay in the box")
{
    const Box box{{-1, 0}, {1, 2}};
    const SamplePlan plan{box, 50, 42, 1.0};
    const auto p1 = plan.points();
    const auto p2 = plan.points();
    REQUIRE(p1.size() >= 50);
    CHECK(p1 == p2);  // bit-for-bit
    for (const auto& x : p1) {
        CHECK(x[0] >= -1.0);
        CHECK(x[0] <= 1.0);
        CHECK(x[1] >= 0.0);
        CHECK(x[1] <= 2.0);
    }
    const SamplePlan other{box, 50, 43, 1.0};
    CHECK(other.points() != p1);
}

TEST_CASE("lipschitz_estimate bounds")
{
    const SamplePlan line{Box{{-1}, {1}}, 200, 3, 0.9};
    const ScalarField lin = parse_expression("3*x1", 1);
    const double e_lin = lipschitz_estimate(lin, line);
    CHECK(e_lin >= 3.0 - 1e-9);
    // quotients of rounded products over close pairs sit a few ulps high
    CHECK(e_lin <= 3.0 * (1.0 + 1e-12));

    const double e_abs = lipschitz_estimate(parse_expression("abs(x1)", 1), line);
    CHECK(e_abs <= 1.0);

    const SamplePlan square{Box{{-1, -1}, {1, 1}}, 1024, 3, 0.9};
    const double e_max = lipschitz_estimate(parse_expression("max(x1, x2)", 2), square);
    CHECK(e_max <= std::sqrt(2.0));
    CHECK(e_max >= 1.0 - 1e-6);

    CHECK_THROWS_AS(lipschitz_estimate(lin, SamplePlan{Box{{-1}, {1}}, 1, 3, 0.9}),
                    usage_error);
}

TEST_CASE("declared Lipschitz bounds are sound on the corpus")
{
    for (const auto& entry : catalog_fields()) {
        CAPTURE(entry.name);
        REQUIRE(entry.field.lip_bound().has_value());
        const SamplePlan plan{entry.box, 400, 17, 0.9};
        const double est = lipschitz_estimate(entry.field, plan);
        const double bound = *entry.field.lip_bound();
        CHECK(est <= bound * (1.0 + 1e-9));
        // and the declared bound certifies the pairwise inequality directly
        const auto pts = plan.points();
        for (size_t i = 0; i + 7 < pts.size(); i += 7) {
            double dist2 = 0.0;
            for (size_t j = 0; j < pts[i].size(); ++j) {
                const double d = pts[i][j] - pts[i + 7][j];
                dist2 += d * d;
            }
            CHECK(std::abs(entry.field(pts[i]) - entry.field(pts[i + 7])) <=
                  bound * std::sqrt(dist2) + 1e-12);
        }
    }
}

TEST_CASE("bump primitive shape")
{
    const ScalarField b = bump(ScalarField::coordinate(1, 0), 0.5, 2.0);
    CHECK(b({0.5}) == 1.0);
    CHECK(b({2.5}) == 0.0);
    CHECK(b({-1.5}) == 0.0);
    CHECK(b({5.0}) == 0.0);
    CHECK(b.partial(0, {2.5}) == 0.0);
    // slope bound constant: the observed max slope of a unit bump stays below it
    double worst = 0.0;
    const ScalarField u = bump(ScalarField::coordinate(1, 0), 0.0, 1.0);
    for (int i = 0; i <= 20000; ++i) {
        const double x = -1.0 + 2.0 * i / 20000.0;
        worst = std::max(worst, std::abs(u.partial(0, {x})));
    }
    CHECK(worst <= kBumpSlopeMax);
    CHECK(worst >= kBumpSlopeMax - 1e-6);
}

TEST_CASE("piecewise-linear maps")
{
    // hat: (0,0) -> (1,2) -> (2,0), end slopes extended
    const ScalarField f = pwl(ScalarField::coordinate(1, 0), {0, 0, 1, 2, 2, 0});
    CHECK(f({0.5}) == 1.0);
    CHECK(f({1.5}) == 1.0);
    CHECK(f({1.0}) == 2.0);
    CHECK(f({-1.0}) == -2.0);  // left slope 2 extended
    CHECK(f.partial(0, {0.5}) == 2.0);
    CHECK(f.partial(0, {1.5}) == -2.0);
}

TEST_CASE("composition closes the field algebra")
{
    const ScalarField outer = parse_expression("abs(x1) + x2^2", 2);
    const std::vector<ScalarField> inner = {parse_expression("x1 - x2", 2),
                                            parse_expression("x1 * x2", 2)};
    const ScalarField c = outer.compose(inner);
    const std::vector<double> x = {0.7, 0.31};
    CHECK(c(x) == doctest::Approx(std::abs(x[0] - x[1]) +
                                  (x[0] * x[1]) * (x[0] * x[1])).epsilon(1e-15));
    for (int j = 0; j < 2; ++j)
        CHECK(c.partial(j, x) == doctest::Approx(fd_partial(c, j, x, 1e-6)).epsilon(1e-6));
}

TEST_CASE("expression grammar errors")
{
    CHECK_THROWS_AS(parse_expression("x3", 2), config_error);
    CHECK_THROWS_AS(parse_expression("min(x1)", 2), config_error);
    CHECK_THROWS_AS(parse_expression("2 +", 1), config_error);
    CHECK_THROWS_AS(parse_expression("bump(x1, x2, 1)", 2), config_error);  // non-const center
    CHECK_THROWS_AS(parse_expression("x1 ^ 1.5", 1), config_error);
    CHECK_THROWS_AS(parse_expression("", 1), config_error);
    // pi and powers parse
    const ScalarField f = parse_expression("sin(pi * x1)^2 + cos(pi * x1)^2", 1);
    CHECK(f({0.3}) == doctest::Approx(1.0).epsilon(1e-15));
}
