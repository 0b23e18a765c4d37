#pragma once

#include <string>
#include <vector>

#include "lipform/form.hpp"
#include "lipform/integrate.hpp"
#include "lipform/report.hpp"

namespace lipform {

/// A chart phi: M -> R^n or H^n with an explicit inverse; both directions are
/// expression-tree point maps, so pullbacks remain exact compositions.
struct Chart {
    std::string label;
    std::vector<ScalarField> forward;  // ambient -> target coordinates
    std::vector<ScalarField> inverse;  // target -> ambient coordinates
    Domain target;

    int arity() const { return static_cast<int>(forward.size()); }
    void validate() const;
};

/// Charts plus a partition of unity in ambient coordinates. `region` marks
/// the manifold (inside where >= 0) and `sample_box` bounds it; both drive
/// the sampled partition check.
struct Atlas {
    std::vector<Chart> charts;
    std::vector<ScalarField> bumps;  // rho_alpha, one per chart
    ScalarField region;
    Box sample_box;

    void validate() const;
};

/// (f o psi) d(g_1 o psi) ^ ... with psi = chart.inverse: pure composition,
/// no Jacobian factors, because the form is generated by scalar functions.
SimpleForm pullback(const Chart& chart, const SimpleForm& form);
FormSum pullback(const Chart& chart, const FormSum& form);

/// Coefficient becomes rho * f; factors unchanged.
SimpleForm scale_by_bump(const ScalarField& rho, const SimpleForm& form);
FormSum scale_by_bump(const ScalarField& rho, const FormSum& form);

/// Checks inverse(forward(x)) = x on jittered interior samples of the chart
/// target pulled back, and forward(inverse(y)) = y on target samples; also
/// that the inverse is orientation-preserving there. Throws config_error.
void check_chart(const Chart& chart, std::uint64_t seed = 7, double tol = 1e-10);

/// Checks each rho_alpha >= 0 and |sum rho - 1| <= tol at jittered samples of
/// the region. Throws config_error; returns the largest deviation seen.
double check_partition(const Atlas& atlas, std::uint64_t seed = 7, double tol = 1e-9,
                       int samples = 400);

struct ManifoldRunOptions {
    int cells_override = 0;
    bool flip_orientation = false;
};

/// Chart-local Stokes totals: boundary = sum_alpha of the boundary integral
/// of (rho_alpha omega) pulled back, interior likewise for its exterior
/// derivative. Deterministic chart order.
struct ManifoldIntegrals {
    double boundary = 0.0;
    double interior = 0.0;
};
ManifoldIntegrals stokes_manifold_integrals(const Atlas& atlas, const FormSum& form,
                                            const GridSpec& grid,
                                            const ManifoldRunOptions& opts = {});

/// Full report over the refinement ladder of `grid`.
StokesReport stokes_manifold(const Atlas& atlas, const FormSum& form, const GridSpec& grid,
                             const ManifoldRunOptions& opts = {});

}  // namespace lipform
