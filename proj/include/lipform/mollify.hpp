#pragma once

#include <optional>
#include <vector>

#include "lipform/form.hpp"
#include "lipform/sample.hpp"

namespace lipform {

/// Geometric sequence eps_s = eps0 * ratio^s, s = 0..count-1; strictly
/// decreasing, all positive.
struct MollificationSchedule {
    double eps0 = 0.5;
    double ratio = 0.5;
    int count = 8;

    void validate() const;
    double eps(int s) const;
};

/// Symmetric Steklov average: x -> eps^{-n} * integral of f over the cube
/// x + [-eps/2, eps/2]^n. The result is again an evaluable field; its a.e.
/// partials route through the exact face-average derivative.
ScalarField steklov_average(const ScalarField& f, double eps);

/// Exact partial of steklov_average(f, eps) along `axis`: the difference of
/// the two face averages divided by eps, by the fundamental theorem of
/// calculus. Requires no differentiability of f.
ScalarField steklov_partial(const ScalarField& f, double eps, int axis);

/// Even reflection across {x_axis = 0}: f(x', |x_axis|). Preserves the
/// Lipschitz constant; used to extend half-space fields before averaging.
ScalarField reflect_even(const ScalarField& f, int axis);

/// Replaces every member field by its Steklov average. With `reflect_axis`
/// set, members are first extended by even reflection across that hyperplane
/// (half-space domains).
SimpleForm mollify_form(const SimpleForm& form, double eps,
                        std::optional<int> reflect_axis = std::nullopt);
FormSum mollify_form(const FormSum& form, double eps,
                     std::optional<int> reflect_axis = std::nullopt);

/// Empirical a.e.-convergence probe of (d/dx_j f)_eps -> d/dx_j f.
struct ConvergenceReport {
    std::vector<int> axes;                        // probed axes
    std::vector<double> fraction_per_axis;        // at the final eps
    double overall_fraction = 0.0;                // min over probed axes
    std::vector<std::vector<double>> max_dev;     // [s][axis] max |deviation|
};

/// For each probed axis, the fraction of plan points where the Steklov
/// derivative at the last eps is within tol of the a.e. partial, plus per-step
/// maximal deviations for trend inspection. `axes` empty means all axes.
ConvergenceReport convergence_probe(const ScalarField& f, const MollificationSchedule& sched,
                                    const SamplePlan& plan, double tol,
                                    std::vector<int> axes = {});

}  // namespace lipform
