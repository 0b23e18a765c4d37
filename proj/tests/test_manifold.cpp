#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lipform/catalog.hpp"
#include "lipform/errors.hpp"
#include "lipform/manifold.hpp"
#include "lipform/parse.hpp"

using namespace lipform;

namespace {

SimpleForm make_form(int n, const std::string& coeff, const std::vector<std::string>& factors)
{
    SimpleForm form;
    form.ambient = n;
    form.coefficient = parse_expression(coeff, n);
    for (const auto& g : factors) form.factors.push_back(parse_expression(g, n));
    return form;
}

Chart identity_chart(const Domain& target)
{
    Chart c;
    c.label = "identity";
    const int n = target.dim();
    for (int j = 0; j < n; ++j) {
        c.forward.push_back(ScalarField::coordinate(n, j));
        c.inverse.push_back(ScalarField::coordinate(n, j));
    }
    c.target = target;
    return c;
}

Atlas disk_atlas() { return *catalog_scenario("disk-atlas").atlas; }

double fd_partial(const ScalarField& f, int axis, std::vector<double> x, double h)
{
    std::vector<double> lo = x, hi = x;
    hi[static_cast<size_t>(axis)] += h;
    lo[static_cast<size_t>(axis)] -= h;
    return (f(hi) - f(lo)) / (2.0 * h);
}

}  // namespace

TEST_CASE("pullback by the identity chart is pointwise exact")
{
    const Domain target{DomainKind::HalfSpace, Box{{-2, 0}, {2, 2}}, {}};
    const Chart id = identity_chart(target);
    const SimpleForm w = make_form(2, "bump(x1, 0, 1)*max(0, 1 - x2)", {"x1 + 0.3*abs(x1)"}) ;
    const SimpleForm pw = pullback(id, w);
    const int axes[] = {0};
    for (const auto& x : SamplePlan{target.clipped_box(), 50, 3, 0.9}.points())
        CHECK(coefficient(pw, axes, x) == coefficient(w, axes, x));
}

TEST_CASE("pullback by a translation substitutes coordinates")
{
    Chart shift;
    shift.label = "shift";
    // forward x -> x - c, inverse y -> y + c with c = (2, -1)
    shift.forward = {parse_expression("x1 - 2", 2), parse_expression("x2 + 1", 2)};
    shift.inverse = {parse_expression("x1 + 2", 2), parse_expression("x2 - 1", 2)};
    shift.target = Domain{DomainKind::FullSpace, Box{{-1, -1}, {1, 1}}, {}};
    const SimpleForm w = make_form(2, "x1", {"x2"});
    const SimpleForm pw = pullback(shift, w);
    const int axes[] = {1};
    const double y[] = {0.25, -0.75};
    CHECK(coefficient(pw, axes, y) == doctest::Approx(0.25 + 2.0).epsilon(1e-15));
}

TEST_CASE("polar collar pullback matches a chain-rule oracle")
{
    const Chart collar = disk_atlas().charts[1];
    const SimpleForm w = make_form(2, "x1", {"x2"});
    const SimpleForm pw = pullback(collar, w);
    const SamplePlan plan{collar.target.clipped_box(), 50, 41, 0.9};
    for (const auto& y : plan.points()) {
        std::vector<double> x(2);
        for (int k = 0; k < 2; ++k) x[static_cast<size_t>(k)] = collar.inverse[static_cast<size_t>(k)](y);
        for (int j = 0; j < 2; ++j) {
            // oracle: f(psi(y)) * sum_k d g/d x_k * d psi_k/d y_j, with the
            // chart Jacobian taken by central differences
            double chain = 0.0;
            for (int k = 0; k < 2; ++k)
                chain += w.factors[0].partial(k, x) *
                         fd_partial(collar.inverse[static_cast<size_t>(k)], j, y, 1e-6);
            const double oracle = w.coefficient(x) * chain;
            const int axes[] = {j};
            CHECK(coefficient(pw, axes, y) == doctest::Approx(oracle).scale(1).epsilon(1e-8));
        }
    }
}

TEST_CASE("scale_by_bump")
{
    const SimpleForm w = make_form(2, "x1 + x2", {"x2"});
    const double x[] = {0.3, 0.4};
    const int axes[] = {1};

    const SimpleForm unchanged = scale_by_bump(ScalarField::constant(2, 1.0), w);
    CHECK(coefficient(unchanged, axes, x) == coefficient(w, axes, x));

    const SimpleForm zero = scale_by_bump(ScalarField::constant(2, 0.0), w);
    CHECK(coefficient(zero, axes, x) == 0.0);

    const ScalarField rho = parse_expression("bump(x1, 0, 1)*bump(x2, 0, 1)", 2);
    const SimpleForm scaled = scale_by_bump(rho, w);
    CHECK(coefficient(scaled, axes, x) ==
          doctest::Approx(rho(x) * coefficient(w, axes, x)).epsilon(1e-15));
}

TEST_CASE("chart validation catches broken charts")
{
    const Atlas atlas = disk_atlas();
    for (const auto& c : atlas.charts) check_chart(c);  // the corpus charts pass

    Chart broken = atlas.charts[1];
    broken.inverse[0] = parse_expression("(1 - x2)*cos(x1) + 0.001", 2);
    CHECK_THROWS_AS(check_chart(broken), config_error);

    // orientation-reversing map: axis swap
    Chart swapped;
    swapped.label = "swap";
    swapped.forward = {parse_expression("x2", 2), parse_expression("x1", 2)};
    swapped.inverse = {parse_expression("x2", 2), parse_expression("x1", 2)};
    swapped.target = Domain{DomainKind::FullSpace, Box{{-1, -1}, {1, 1}}, {}};
    CHECK_THROWS_AS(check_chart(swapped), config_error);
}

TEST_CASE("partition of unity checks")
{
    const Atlas atlas = disk_atlas();
    const double worst = check_partition(atlas);
    CHECK(worst <= 1e-12);

    Atlas broken = atlas;
    broken.bumps[1] = broken.bumps[0];  // duplicates no longer sum to 1
    CHECK_THROWS_AS(check_partition(broken), config_error);
}

TEST_CASE("single identity chart reproduces the flat integrals bit-for-bit")
{
    const Domain target{DomainKind::HalfSpace, Box{{-2, 0}, {2, 2}}, {}};
    Atlas atlas;
    atlas.charts = {identity_chart(target)};
    atlas.bumps = {ScalarField::constant(2, 1.0)};
    atlas.region = ScalarField::constant(2, 1.0);
    atlas.sample_box = target.support_box;

    const FormSum w = FormSum::of(make_form(2, "bump(x1, 0, 1)*max(0, 1 - x2)", {"x1"}));
    const GridSpec grid;
    const ManifoldIntegrals totals = stokes_manifold_integrals(atlas, w, grid);
    CHECK(totals.boundary == integrate_boundary(w, target, grid));
    CHECK(totals.interior == integrate_interior(exterior_derivative(w), target, grid));
}

TEST_CASE("naturality: d commutes with pullback at jittered points")
{
    const Chart collar = disk_atlas().charts[1];
    const SamplePlan plan{collar.target.clipped_box(), 50, 57, 0.9};

    const SimpleForm smooth = make_form(2, "x1", {"x2"});
    const SimpleForm lipschitz = make_form(2, "x1 + 0.3*abs(x1)", {"x2"});
    for (const auto& y : plan.points()) {
        const double ds = volume_coefficient(exterior_derivative(pullback(collar, smooth)), y);
        const double sd = volume_coefficient(pullback(collar, exterior_derivative(smooth)), y);
        CHECK(ds == doctest::Approx(sd).scale(1).epsilon(1e-8));
        const double dl =
            volume_coefficient(exterior_derivative(pullback(collar, lipschitz)), y);
        const double ld =
            volume_coefficient(pullback(collar, exterior_derivative(lipschitz)), y);
        CHECK(dl == doctest::Approx(ld).scale(1).epsilon(1e-5));
    }
}

TEST_CASE("disk atlas Stokes totals")
{
    const Scenario sc = catalog_scenario("disk-atlas");
    const GridSpec grid = sc.grid;
    ManifoldRunOptions opts;
    opts.cells_override = 64;
    const ManifoldIntegrals totals = stokes_manifold_integrals(*sc.atlas, sc.form, grid, opts);
    CHECK(totals.boundary == doctest::Approx(std::numbers::pi).epsilon(1e-3));
    CHECK(totals.interior == doctest::Approx(std::numbers::pi).epsilon(1e-3));
}

TEST_CASE("partition replacement leaves the totals invariant")
{
    // flat atlas, two identity charts sharing one target: quadrature is
    // pointwise linear, so any valid partition gives the same totals
    const Domain target{DomainKind::HalfSpace, Box{{-2, 0}, {2, 2}}, {}};
    const FormSum w = FormSum::of(make_form(2, "bump(x1, 0, 1)*max(0, 1 - x2)", {"x1"}));
    const GridSpec grid;

    auto totals_with = [&](const std::string& rho) {
        Atlas atlas;
        atlas.charts = {identity_chart(target), identity_chart(target)};
        atlas.bumps = {parse_expression(rho, 2), parse_expression("1 - (" + rho + ")", 2)};
        atlas.region = ScalarField::constant(2, 1.0);
        atlas.sample_box = target.support_box;
        check_partition(atlas);
        return stokes_manifold_integrals(atlas, w, grid);
    };
    const ManifoldIntegrals a = totals_with("min(max(0.5 + 0.25*x1, 0), 1)");
    const ManifoldIntegrals b = totals_with("min(max(0.5 - 0.3*x2, 0), 1)");
    CHECK(a.boundary == doctest::Approx(b.boundary).epsilon(1e-12));
    CHECK(a.interior == doctest::Approx(b.interior).epsilon(1e-12));

    // disk scenario with a narrower collar band: totals agree to quadrature
    // accuracy (the discretizations differ, so this is not exact)
    const Scenario sc = catalog_scenario("disk-atlas");
    Atlas alt = *sc.atlas;
    // smoothstep between r = 0.65 and r = 0.8: 0.8^2 - 0.65^2 = 0.2175
    const std::string c = "min(max((0.64 - x1^2 - x2^2)/0.2175, 0), 1)";
    alt.bumps[0] = parse_expression(c + "^2 * (3 - 2*" + c + ")", 2);
    alt.bumps[1] = parse_expression("1 - " + c + "^2 * (3 - 2*" + c + ")", 2);
    check_partition(alt);
    ManifoldRunOptions opts;
    opts.cells_override = 96;
    const ManifoldIntegrals base = stokes_manifold_integrals(*sc.atlas, sc.form, sc.grid, opts);
    const ManifoldIntegrals swap = stokes_manifold_integrals(alt, sc.form, sc.grid, opts);
    CHECK(swap.boundary == doctest::Approx(base.boundary).epsilon(1e-8));
    CHECK(swap.interior == doctest::Approx(base.interior).epsilon(5e-4));
}

TEST_CASE("stokes_manifold produces a converging report")
{
    const Scenario sc = catalog_scenario("disk-atlas");
    const StokesReport report = stokes_manifold(*sc.atlas, sc.form, sc.grid);
    REQUIRE(report.levels.size() == 3);
    CHECK(std::abs(report.levels.back().residual) < std::abs(report.levels.front().residual));
    CHECK(report.relative_residual <= sc.tolerance);
}
