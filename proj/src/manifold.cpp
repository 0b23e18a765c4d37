#include "lipform/manifold.hpp"

#include <cmath>
#include <string>

#include "lipform/errors.hpp"

namespace lipform {

void Chart::validate() const
{
    if (forward.empty() || forward.size() != inverse.size())
        throw config_error("chart '" + label + "': forward and inverse must have equal, nonzero "
                           "component counts");
    const int n = arity();
    for (const auto& c : forward)
        if (c.arity() != n)
            throw config_error("chart '" + label + "': forward component arity mismatch");
    for (const auto& c : inverse)
        if (c.arity() != n)
            throw config_error("chart '" + label + "': inverse component arity mismatch");
    target.validate();
    if (target.dim() != n)
        throw config_error("chart '" + label + "': target dimension does not match the map");
}

void Atlas::validate() const
{
    if (charts.empty()) throw config_error("atlas: no charts");
    if (bumps.size() != charts.size())
        throw config_error("atlas: need exactly one partition bump per chart");
    const int n = charts.front().arity();
    for (const auto& c : charts) {
        c.validate();
        if (c.arity() != n) throw config_error("atlas: charts of mixed dimension");
    }
    for (const auto& rho : bumps)
        if (rho.arity() != n) throw config_error("atlas: bump arity mismatch");
    if (region.arity() != n) throw config_error("atlas: region indicator arity mismatch");
    sample_box.validate();
    if (sample_box.dim() != n) throw config_error("atlas: sample box dimension mismatch");
}

SimpleForm pullback(const Chart& chart, const SimpleForm& form)
{
    chart.validate();
    form.validate();
    if (form.ambient != chart.arity())
        throw usage_error("pullback: form ambient dimension does not match the chart");
    SimpleForm out;
    out.ambient = form.ambient;
    out.coefficient = form.coefficient.compose(chart.inverse);
    out.factors.reserve(form.factors.size());
    for (const auto& g : form.factors) out.factors.push_back(g.compose(chart.inverse));
    return out;
}

FormSum pullback(const Chart& chart, const FormSum& form)
{
    form.validate();
    FormSum out = FormSum::zero(form.ambient, form.degree);
    for (const auto& t : form.terms) out.terms.push_back(pullback(chart, t));
    return out;
}

SimpleForm scale_by_bump(const ScalarField& rho, const SimpleForm& form)
{
    form.validate();
    if (rho.arity() != form.ambient)
        throw usage_error("scale_by_bump: bump arity does not match the form");
    SimpleForm out = form;
    out.coefficient = rho * form.coefficient;
    return out;
}

FormSum scale_by_bump(const ScalarField& rho, const FormSum& form)
{
    form.validate();
    FormSum out = FormSum::zero(form.ambient, form.degree);
    for (const auto& t : form.terms) out.terms.push_back(scale_by_bump(rho, t));
    return out;
}

void check_chart(const Chart& chart, std::uint64_t seed, double tol)
{
    chart.validate();
    const int n = chart.arity();
    SamplePlan plan{chart.target.clipped_box(), 64, seed, 0.9};
    std::vector<double> x(static_cast<size_t>(n));
    std::vector<double> y2(static_cast<size_t>(n));
    std::vector<double> jac(static_cast<size_t>(n * n));
    for (const auto& y : plan.points()) {
        for (int j = 0; j < n; ++j) x[static_cast<size_t>(j)] = chart.inverse[static_cast<size_t>(j)](y);
        for (int j = 0; j < n; ++j) y2[static_cast<size_t>(j)] = chart.forward[static_cast<size_t>(j)](x);
        for (int j = 0; j < n; ++j)
            if (std::abs(y2[static_cast<size_t>(j)] - y[static_cast<size_t>(j)]) > tol)
                throw config_error("chart '" + chart.label +
                                   "': forward(inverse(y)) deviates from y by " +
                                   std::to_string(std::abs(y2[static_cast<size_t>(j)] - y[static_cast<size_t>(j)])));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                jac[static_cast<size_t>(i * n + j)] = chart.inverse[static_cast<size_t>(i)].partial(j, y);
        if (!(small_det(jac, n) > 0.0))
            throw config_error("chart '" + chart.label +
                               "': inverse map is not orientation-preserving on the target");
    }
}

double check_partition(const Atlas& atlas, std::uint64_t seed, double tol, int samples)
{
    atlas.validate();
    SamplePlan plan{atlas.sample_box, samples, seed, 0.9};
    double worst = 0.0;
    for (const auto& x : plan.points()) {
        if (atlas.region(x) < 0.0) continue;
        double sum = 0.0;
        for (size_t a = 0; a < atlas.bumps.size(); ++a) {
            const double rho = atlas.bumps[a](x);
            if (rho < -1e-12)
                throw config_error("partition of unity: bump " + std::to_string(a + 1) +
                                   " is negative (" + std::to_string(rho) + ") at a sample point");
            sum += rho;
        }
        worst = std::max(worst, std::abs(sum - 1.0));
        if (std::abs(sum - 1.0) > tol)
            throw config_error("partition of unity: sum deviates from 1 by " +
                               std::to_string(std::abs(sum - 1.0)) + " at a sample point");
    }
    return worst;
}

ManifoldIntegrals stokes_manifold_integrals(const Atlas& atlas, const FormSum& form,
                                            const GridSpec& grid, const ManifoldRunOptions& opts)
{
    atlas.validate();
    form.validate();
    ManifoldIntegrals totals;
    for (size_t a = 0; a < atlas.charts.size(); ++a) {
        const FormSum piece = pullback(atlas.charts[a], scale_by_bump(atlas.bumps[a], form));
        totals.boundary += integrate_boundary(piece, atlas.charts[a].target, grid,
                                              opts.cells_override, opts.flip_orientation);
        totals.interior += integrate_interior(exterior_derivative(piece), atlas.charts[a].target,
                                              grid, opts.cells_override);
    }
    return totals;
}

StokesReport stokes_manifold(const Atlas& atlas, const FormSum& form, const GridSpec& grid,
                             const ManifoldRunOptions& opts)
{
    check_partition(atlas);
    for (const auto& c : atlas.charts) check_chart(c);

    StokesReport report;
    int m = grid.cells_per_axis;
    for (int level = 0; level < grid.refinement_levels; ++level, m *= 2) {
        ManifoldRunOptions level_opts = opts;
        level_opts.cells_override = m;
        const ManifoldIntegrals totals = stokes_manifold_integrals(atlas, form, grid, level_opts);
        report.levels.push_back(
            {level, m, totals.boundary, totals.interior, totals.boundary - totals.interior});
    }
    const LevelRow& finest = report.levels.back();
    report.boundary_integral = finest.boundary;
    report.interior_integral = finest.interior;
    report.residual = finest.residual;
    report.relative_residual = std::abs(finest.residual) / (1.0 + std::abs(finest.interior));
    return report;
}

}  // namespace lipform
