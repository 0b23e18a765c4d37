#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "lipform/catalog.hpp"
#include "lipform/errors.hpp"
#include "lipform/mollify.hpp"
#include "lipform/parse.hpp"

using namespace lipform;

namespace {

// Independent adaptive Simpson oracle, separate from the library quadrature.
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

double integrate_oracle(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12)
{
    const double m = 0.5 * (a + b);
    return simpson(f, a, b, f(a), f(m), f(b), tol, 40);
}

SimpleForm make_form(int n, const std::string& coeff, const std::vector<std::string>& factors)
{
    SimpleForm form;
    form.ambient = n;
    form.coefficient = parse_expression(coeff, n);
    for (const auto& g : factors) form.factors.push_back(parse_expression(g, n));
    return form;
}

}  // namespace

TEST_CASE("schedule validation and values")
{
    MollificationSchedule sched{0.5, 0.5, 8};
    sched.validate();
    CHECK(sched.eps(0) == 0.5);
    CHECK(sched.eps(3) == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK_THROWS_AS((MollificationSchedule{0.0, 0.5, 3}).validate(), usage_error);
    CHECK_THROWS_AS((MollificationSchedule{0.5, 1.0, 3}).validate(), usage_error);
    CHECK_THROWS_AS((MollificationSchedule{0.5, 0.5, 0}).validate(), usage_error);
    CHECK_THROWS_AS(steklov_average(parse_expression("x1", 1), 0.0), usage_error);
    CHECK_THROWS_AS(steklov_partial(parse_expression("x1", 1), 0.5, 1), usage_error);
}

TEST_CASE("steklov averages of simple fields")
{
    const ScalarField c = ScalarField::constant(2, 3.25);
    const ScalarField c_eps = steklov_average(c, 0.7);
    CHECK(c_eps({0.3, -0.8}) == doctest::Approx(3.25).epsilon(1e-13));

    const ScalarField lin = parse_expression("x1", 1);
    const ScalarField lin_eps = steklov_average(lin, 0.3);
    for (double x : {-0.7, 0.0, 0.41})
        CHECK(lin_eps({x}) == doctest::Approx(x).scale(1).epsilon(1e-12));

    // |x| averaged over [-1/2, 1/2] at 0: analytic 1/4, plus Simpson oracle
    const ScalarField a = parse_expression("abs(x1)", 1);
    const ScalarField a1 = steklov_average(a, 1.0);
    CHECK(a1({0.0}) == doctest::Approx(0.25).epsilon(1e-10));
    const double oracle =
        integrate_oracle([](double t) { return std::abs(t); }, -0.5, 0.5);
    CHECK(a1({0.0}) == doctest::Approx(oracle).epsilon(1e-10));
    // off the kink: exact piecewise value (x^2 + eps^2/4) / eps at |x| < eps/2
    CHECK(a1({0.3}) == doctest::Approx(0.3 * 0.3 + 0.25).epsilon(1e-10));
}

TEST_CASE("steklov partial is the exact face-average derivative")
{
    const ScalarField lin = parse_expression("x1", 1);
    const ScalarField dlin = steklov_partial(lin, 0.37, 0);
    CHECK(dlin({0.2}) == doctest::Approx(1.0).epsilon(1e-12));

    const ScalarField a = parse_expression("abs(x1)", 1);
    CHECK(steklov_partial(a, 1.0, 0)({0.0}) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
    CHECK(steklov_partial(a, 0.2, 0)({0.5}) == doctest::Approx(1.0).epsilon(1e-12));

    // 2-D: face averages are genuine integrals; oracle on |x1| + x2^2
    const ScalarField f = parse_expression("abs(x1) + x2^2", 2);
    const double eps = 0.4;
    auto face = [&](double x1) {
        return integrate_oracle(
            [&](double t2) { return std::abs(x1) + (0.1 + t2) * (0.1 + t2); }, -eps / 2,
            eps / 2) / eps;
    };
    const double expected = (face(0.05 + eps / 2) - face(0.05 - eps / 2)) / eps;
    CHECK(steklov_partial(f, eps, 0)({0.05, 0.1}) ==
          doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("commutation with central differences of the average")
{
    const double h = 3e-5;
    for (double eps : {0.5, 0.1}) {
        for (const auto& entry : {std::string("abs(x1)"), std::string("bump(x1, 0, 1)")}) {
            const ScalarField f = parse_expression(entry, 1);
            const ScalarField avg = steklov_average(f, eps);
            const ScalarField der = steklov_partial(f, eps, 0);
            for (double x : {-0.63, -0.11, 0.04, 0.52}) {
                const double cd = (avg({x + h}) - avg({x - h})) / (2.0 * h);
                CHECK(der({x}) == doctest::Approx(cd).scale(1).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("affine fields are exact fixed points")
{
    const ScalarField affine = parse_expression("2*x1 - 0.7*x2 + 1.3", 2);
    const ScalarField avg = steklov_average(affine, 0.45);
    for (const auto& x : SamplePlan{Box{{-1, -1}, {1, 1}}, 25, 3, 0.9}.points())
        CHECK(avg(x) == doctest::Approx(affine(x)).epsilon(1e-12));
}

TEST_CASE("contraction and uniform derivative bound")
{
    const SamplePlan plan{Box{{-1}, {1}}, 120, 19, 0.9};
    const ScalarField f = parse_expression("abs(x1)", 1).with_lip_bound(1.0);
    for (double eps : {0.5, 0.1}) {
        const ScalarField avg = steklov_average(f, eps);
        CHECK(lipschitz_estimate(avg, SamplePlan{Box{{-1}, {1}}, 60, 19, 0.9}) <=
              lipschitz_estimate(f, plan) * (1.0 + 1e-6));
        const ScalarField der = steklov_partial(f, eps, 0);
        for (const auto& x : plan.points())
            CHECK(std::abs(der(x)) <= 1.0 * (1.0 + 1e-9));
    }
}

TEST_CASE("mollify_form replaces member fields")
{
    // constants and linears: fixed points, any eps
    const SimpleForm cw = make_form(2, "3", {"x1"});
    const SimpleForm cw_eps = mollify_form(cw, 0.8);
    const int axes[] = {0};
    const double p[] = {0.2, 0.4};
    CHECK(coefficient(cw_eps, axes, p) == doctest::Approx(3.0).epsilon(1e-12));

    const SimpleForm lw = make_form(2, "x1", {"x2"});
    const SimpleForm lw_eps = mollify_form(lw, 0.8);
    const int axes2[] = {1};
    CHECK(coefficient(lw_eps, axes2, p) == doctest::Approx(0.2).epsilon(1e-11));

    // |x1| dx2 at x1 = 0 with eps = 1: coefficient 1/4
    const SimpleForm aw = make_form(2, "abs(x1)", {"x2"});
    const SimpleForm aw_eps = mollify_form(aw, 1.0);
    const double origin[] = {0.0, 0.3};
    CHECK(coefficient(aw_eps, axes2, origin) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("even reflection across the boundary")
{
    const ScalarField f = parse_expression("x2 + x1^2", 2);
    const ScalarField r = reflect_even(f, 1);
    CHECK(r({0.5, -0.3}) == doctest::Approx(f({0.5, 0.3})).epsilon(1e-15));
    CHECK(r({0.5, 0.3}) == doctest::Approx(f({0.5, 0.3})).epsilon(1e-15));

    // mollify_form with a reflect axis agrees with plain mollification away
    // from the boundary
    const SimpleForm w = make_form(2, "bump(x1, 0, 1)*bump(x2, 0, 1)", {"x1"});
    const SimpleForm plain = mollify_form(w, 0.2);
    const SimpleForm reflected = mollify_form(w, 0.2, 1);
    const int axes[] = {0};
    const double deep[] = {0.3, 0.6};  // cube stays inside {x2 > 0}
    CHECK(coefficient(reflected, axes, deep) ==
          doctest::Approx(coefficient(plain, axes, deep)).epsilon(1e-11));
}

TEST_CASE("convergence probe")
{
    const MollificationSchedule sched{0.5, 0.5, 8};

    // smooth field: exact commutation, fraction 1
    const ScalarField q = parse_expression("0.5*x1^2", 1);
    const SamplePlan plan{Box{{-1}, {1}}, 60, 5, 0.9};
    const ConvergenceReport r1 = convergence_probe(q, sched, plan, 1e-3);
    CHECK(r1.overall_fraction == 1.0);

    // |x1| on a jittered plan: kink avoided, fraction 1
    const ScalarField a = parse_expression("abs(x1)", 1);
    const ConvergenceReport r2 = convergence_probe(a, sched, plan, 1e-3);
    CHECK(r2.overall_fraction == 1.0);
    // max deviations shrink along the schedule
    CHECK(r2.max_dev.front()[0] > r2.max_dev.back()[0]);

    // a plan pinned (up to denormal jitter) to the kink itself fails
    const SamplePlan kink{Box{{-1e-300}, {1e-300}}, 1, 5, 0.9};
    REQUIRE(kink.points().size() == 1);
    REQUIRE(std::abs(kink.points()[0][0]) <= 1e-300);
    const ConvergenceReport r3 = convergence_probe(a, sched, kink, 1e-3);
    CHECK(r3.overall_fraction < 1.0);

    // axis subsets are honored
    const ScalarField f2 = parse_expression("abs(x1) + x2", 2);
    const SamplePlan plan2{Box{{-1, -1}, {1, 1}}, 49, 5, 0.9};
    const ConvergenceReport r4 = convergence_probe(f2, sched, plan2, 1e-3, {1});
    CHECK(r4.axes == std::vector<int>{1});
    CHECK(r4.overall_fraction == 1.0);
}

TEST_CASE("corpus fields commute at a spot check")
{
    const double h = 3e-5, eps = 0.1;
    for (const auto& entry : catalog_fields()) {
        CAPTURE(entry.name);
        const SamplePlan plan{entry.box, 9, 23, 0.9};
        const int n = entry.field.arity();
        for (const auto& x : plan.points()) {
            for (int j = 0; j < n; ++j) {
                const ScalarField avg = steklov_average(entry.field, eps);
                std::vector<double> hi = x, lo = x;
                hi[static_cast<size_t>(j)] += h;
                lo[static_cast<size_t>(j)] -= h;
                const double cd = (avg(hi) - avg(lo)) / (2.0 * h);
                CHECK(steklov_partial(entry.field, eps, j)(x) ==
                      doctest::Approx(cd).scale(1).epsilon(1e-6));
            }
        }
    }
}
