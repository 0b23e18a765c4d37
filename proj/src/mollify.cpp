#include "lipform/mollify.hpp"

#include <cmath>
#include <string>

#include "lipform/errors.hpp"

namespace lipform {

void MollificationSchedule::validate() const
{
    if (!(eps0 > 0.0)) throw usage_error("MollificationSchedule: eps0 must be positive");
    if (!(ratio > 0.0 && ratio < 1.0))
        throw usage_error("MollificationSchedule: ratio must lie in (0,1)");
    if (count < 1) throw usage_error("MollificationSchedule: count must be >= 1");
}

double MollificationSchedule::eps(int s) const
{
    if (s < 0 || s >= count) throw usage_error("MollificationSchedule: index out of range");
    return eps0 * std::pow(ratio, s);
}

ScalarField steklov_average(const ScalarField& f, double eps)
{
    if (!(eps > 0.0)) throw usage_error("steklov_average: eps must be positive");
    return ScalarField(f.arity(), make_steklov(f.root(), eps), f.lip_bound());
}

ScalarField steklov_partial(const ScalarField& f, double eps, int axis)
{
    if (!(eps > 0.0)) throw usage_error("steklov_partial: eps must be positive");
    if (axis < 0 || axis >= f.arity())
        throw usage_error("steklov_partial: axis " + std::to_string(axis) +
                          " out of range for arity " + std::to_string(f.arity()));
    std::optional<double> bound;
    if (f.lip_bound()) bound = f.lip_bound();  // |average slope| <= Lip(f)
    return ScalarField(f.arity(), make_steklov_diff(f.root(), eps, axis), bound);
}

ScalarField reflect_even(const ScalarField& f, int axis)
{
    if (axis < 0 || axis >= f.arity()) throw usage_error("reflect_even: axis out of range");
    std::vector<ScalarField> inner;
    inner.reserve(static_cast<size_t>(f.arity()));
    for (int j = 0; j < f.arity(); ++j) {
        ScalarField c = ScalarField::coordinate(f.arity(), j);
        inner.push_back(j == axis ? abs(c) : c);
    }
    ScalarField out = f.compose(inner);
    if (f.lip_bound()) out = out.with_lip_bound(*f.lip_bound());
    return out;
}

SimpleForm mollify_form(const SimpleForm& form, double eps, std::optional<int> reflect_axis)
{
    form.validate();
    if (!(eps > 0.0)) throw usage_error("mollify_form: eps must be positive");
    auto smooth = [&](const ScalarField& g) {
        const ScalarField base = reflect_axis ? reflect_even(g, *reflect_axis) : g;
        return steklov_average(base, eps);
    };
    SimpleForm out;
    out.ambient = form.ambient;
    out.coefficient = smooth(form.coefficient);
    out.factors.reserve(form.factors.size());
    for (const auto& g : form.factors) out.factors.push_back(smooth(g));
    return out;
}

FormSum mollify_form(const FormSum& form, double eps, std::optional<int> reflect_axis)
{
    form.validate();
    FormSum out = FormSum::zero(form.ambient, form.degree);
    for (const auto& t : form.terms) out.terms.push_back(mollify_form(t, eps, reflect_axis));
    return out;
}

ConvergenceReport convergence_probe(const ScalarField& f, const MollificationSchedule& sched,
                                    const SamplePlan& plan, double tol, std::vector<int> axes)
{
    sched.validate();
    if (axes.empty())
        for (int j = 0; j < f.arity(); ++j) axes.push_back(j);

    const auto pts = plan.points();
    ConvergenceReport report;
    report.axes = axes;
    report.max_dev.assign(static_cast<size_t>(sched.count),
                          std::vector<double>(axes.size(), 0.0));

    // Reference a.e. partials, once.
    std::vector<std::vector<double>> ref(pts.size(), std::vector<double>(axes.size()));
    for (size_t p = 0; p < pts.size(); ++p)
        for (size_t a = 0; a < axes.size(); ++a) ref[p][a] = f.partial(axes[a], pts[p]);

    std::vector<std::vector<double>> last(pts.size(), std::vector<double>(axes.size()));
    for (int s = 0; s < sched.count; ++s) {
        const double eps = sched.eps(s);
        for (size_t a = 0; a < axes.size(); ++a) {
            const ScalarField dp = steklov_partial(f, eps, axes[a]);
            for (size_t p = 0; p < pts.size(); ++p) {
                const double dev = std::abs(dp(pts[p]) - ref[p][a]);
                report.max_dev[static_cast<size_t>(s)][a] =
                    std::max(report.max_dev[static_cast<size_t>(s)][a], dev);
                if (s == sched.count - 1) last[p][a] = dev;
            }
        }
    }

    report.fraction_per_axis.resize(axes.size());
    report.overall_fraction = 1.0;
    for (size_t a = 0; a < axes.size(); ++a) {
        size_t good = 0;
        for (size_t p = 0; p < pts.size(); ++p)
            if (last[p][a] < tol) ++good;
        report.fraction_per_axis[a] = static_cast<double>(good) / static_cast<double>(pts.size());
        report.overall_fraction = std::min(report.overall_fraction, report.fraction_per_axis[a]);
    }
    return report;
}

}  // namespace lipform
