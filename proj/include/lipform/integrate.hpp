#pragma once

#include <functional>
#include <vector>

#include "lipform/form.hpp"
#include "lipform/sample.hpp"

namespace lipform {

enum class DomainKind { FullSpace, HalfSpace };

/// Truncated R^n or H^n = {x_n >= 0}. `support_box` must contain the support
/// K of the integrand; this is declared by the user and machine-verified via
/// the support-leak checks, never inferred. Axes listed in `periodic_axes`
/// wrap around (used by collar charts); their outer faces are exempt from
/// leak checks.
struct Domain {
    DomainKind kind = DomainKind::FullSpace;
    Box support_box;
    std::vector<int> periodic_axes;  // 0-based

    int dim() const { return support_box.dim(); }
    bool is_periodic(int axis) const;
    void validate() const;
    /// support_box with the x_n lower face clipped to 0 for half-spaces.
    Box clipped_box() const;
};

enum class QuadRule { Midpoint, Gauss };

struct GridSpec {
    int cells_per_axis = 32;
    QuadRule rule = QuadRule::Midpoint;
    int gauss_order = 4;
    int refinement_levels = 4;
    double shift = 0.0;  // one global midpoint jitter, as a fraction of a cell in (-0.5, 0.5)

    void validate() const;
};

/// Orientation sign of the boundary of H^n: the boundary frame
/// (dx_1 .. dx_{n-1}) is weighted so that (outward normal, frame) is
/// positively oriented; relative to the standard orientation of R^{n-1} this
/// is (-1)^n. Anchored by a closed-form n = 2 test before anything else is
/// trusted.
int orientation_sign(int n);

/// Tensor-grid quadrature of the volume coefficient of a degree-n form over
/// the (clipped) support box. Throws support_leak_error if the coefficient is
/// nonzero on an outer face. `cells_override` > 0 replaces
/// grid.cells_per_axis. Deterministic: cell contributions are accumulated by
/// pairwise reduction.
double integrate_interior(const FormSum& top_form, const Domain& dom, const GridSpec& grid,
                          int cells_override = 0);

/// Quadrature of the tangential coefficient over the x_n = 0 face, times the
/// orientation sign. Full-space domains return exactly 0 (empty boundary);
/// n = 1 returns the signed point evaluation -a(0).
double integrate_boundary(const FormSum& form, const Domain& dom, const GridSpec& grid,
                          int cells_override = 0, bool flip_orientation = false);

struct RefineRow {
    int cells;
    double value;
    double diff;  // value - previous value; 0 for the first row
};

/// Evaluates `op` at base_cells, 2*base_cells, ...; levels >= 2.
std::vector<RefineRow> refine_sequence(const std::function<double(int)>& op, int base_cells,
                                       int levels);

}  // namespace lipform
