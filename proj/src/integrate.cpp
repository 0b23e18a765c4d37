#include "lipform/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lipform/errors.hpp"
#include "lipform/quadrature.hpp"

namespace lipform {

bool Domain::is_periodic(int axis) const
{
    return std::find(periodic_axes.begin(), periodic_axes.end(), axis) != periodic_axes.end();
}

void Domain::validate() const
{
    support_box.validate();
    for (int a : periodic_axes)
        if (a < 0 || a >= dim()) throw usage_error("Domain: periodic axis out of range");
    if (kind == DomainKind::HalfSpace) {
        if (dim() < 1) throw usage_error("Domain: half-space needs n >= 1");
        if (support_box.hi[static_cast<size_t>(dim() - 1)] <= 0.0)
            throw usage_error("Domain: half-space support box lies entirely below x_n = 0");
        if (is_periodic(dim() - 1))
            throw usage_error("Domain: the normal axis of a half-space cannot be periodic");
    }
}

Box Domain::clipped_box() const
{
    Box b = support_box;
    if (kind == DomainKind::HalfSpace) {
        auto& lo = b.lo[static_cast<size_t>(dim() - 1)];
        lo = std::max(lo, 0.0);
    }
    return b;
}

void GridSpec::validate() const
{
    if (cells_per_axis < 2) throw usage_error("GridSpec: cells_per_axis must be >= 2");
    if (rule == QuadRule::Gauss && (gauss_order < 1 || gauss_order > 16))
        throw usage_error("GridSpec: gauss_order must lie in 1..16");
    if (refinement_levels < 1) throw usage_error("GridSpec: refinement_levels must be >= 1");
    if (!(shift > -0.5 && shift < 0.5)) throw usage_error("GridSpec: shift must lie in (-0.5, 0.5)");
}

int orientation_sign(int n)
{
    return n % 2 == 0 ? 1 : -1;
}

namespace {

// Walks an n-dimensional lattice of `per_axis[j]` cells.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<int> sizes) : sizes_(std::move(sizes)), idx_(sizes_.size(), 0) {}

    const std::vector<int>& get() const { return idx_; }
    bool advance()
    {
        for (size_t j = 0; j < idx_.size(); ++j) {
            if (++idx_[j] < sizes_[j]) return true;
            idx_[j] = 0;
        }
        return false;
    }

private:
    std::vector<int> sizes_;
    std::vector<int> idx_;
};

// Leak-check lattice per face axis; offsets chosen away from cell centers and
// box midlines so symmetric zero sets are not sampled by accident.
constexpr int kLeakSamplesPerAxis = 9;

double leak_offset(int i)
{
    return (i + 0.381966) / kLeakSamplesPerAxis;  // golden-section stride
}

using FaceEval = std::function<double(std::span<const double>)>;

// Samples `f` on the face {x_axis = value} of `box` and returns the largest
// |value| seen.
double face_max(const FaceEval& f, const Box& box, int axis, double value)
{
    const int n = box.dim();
    std::vector<double> x(static_cast<size_t>(n));
    x[static_cast<size_t>(axis)] = value;
    if (n == 1) return std::abs(f(x));
    std::vector<int> sizes;
    std::vector<int> axes;
    for (int j = 0; j < n; ++j)
        if (j != axis) {
            sizes.push_back(kLeakSamplesPerAxis);
            axes.push_back(j);
        }
    double worst = 0.0;
    MultiIndex mi(sizes);
    do {
        for (size_t k = 0; k < axes.size(); ++k) {
            const int j = axes[k];
            x[static_cast<size_t>(j)] =
                box.lo[static_cast<size_t>(j)] + leak_offset(mi.get()[k]) * box.extent(j);
        }
        worst = std::max(worst, std::abs(f(x)));
    } while (mi.advance());
    return worst;
}

constexpr double kLeakThreshold = 1e-9;

void check_interior_support(const FormSum& top_form, const Domain& dom)
{
    const Box box = dom.clipped_box();
    const int n = dom.dim();
    const FaceEval b = [&](std::span<const double> x) { return volume_coefficient(top_form, x); };
    for (int axis = 0; axis < n; ++axis) {
        if (dom.is_periodic(axis)) continue;
        for (int side = 0; side < 2; ++side) {
            if (dom.kind == DomainKind::HalfSpace && axis == n - 1 && side == 0)
                continue;  // the x_n = 0 face is the boundary, not an outer face
            const double value = side == 0 ? box.lo[static_cast<size_t>(axis)]
                                           : box.hi[static_cast<size_t>(axis)];
            const double worst = face_max(b, box, axis, value);
            if (worst > kLeakThreshold)
                throw support_leak_error(
                    "support leak: volume coefficient reaches " + std::to_string(worst) +
                    " on the " + (side == 0 ? "lower" : "upper") + " face of axis " +
                    std::to_string(axis + 1) + "; enlarge the declared support box");
        }
    }
}

void check_boundary_support(const FormSum& form, const Domain& dom)
{
    const int n = dom.dim();
    if (n < 2) return;
    const Box box = dom.clipped_box();
    Box face;
    for (int j = 0; j + 1 < n; ++j) {
        face.lo.push_back(box.lo[static_cast<size_t>(j)]);
        face.hi.push_back(box.hi[static_cast<size_t>(j)]);
    }
    const FaceEval a = [&](std::span<const double> xp) { return tangential_coefficient(form, xp); };
    for (int axis = 0; axis + 1 < n; ++axis) {
        if (dom.is_periodic(axis)) continue;
        for (int side = 0; side < 2; ++side) {
            const double value = side == 0 ? face.lo[static_cast<size_t>(axis)]
                                           : face.hi[static_cast<size_t>(axis)];
            const double worst = face_max(a, face, axis, value);
            if (worst > kLeakThreshold)
                throw support_leak_error(
                    "support leak: boundary coefficient reaches " + std::to_string(worst) +
                    " on the rim of the boundary face (axis " + std::to_string(axis + 1) +
                    ", " + (side == 0 ? "lower" : "upper") + " side)");
        }
    }
}

// Tensor quadrature of `f` over `box`.
double tensor_quadrature(const FaceEval& f, const Box& box, const GridSpec& grid, int cells)
{
    const int n = box.dim();
    std::vector<double> offsets;  // per-cell relative point positions in (0,1)
    std::vector<double> weights;  // relative weights summing to 1
    if (grid.rule == QuadRule::Midpoint) {
        offsets = {0.5 + grid.shift};
        weights = {1.0};
    } else {
        const GaussRule& g = gauss_rule(grid.gauss_order);
        for (int i = 0; i < grid.gauss_order; ++i) {
            offsets.push_back(0.5 * (1.0 + g.nodes[static_cast<size_t>(i)]));
            weights.push_back(0.5 * g.weights[static_cast<size_t>(i)]);
        }
    }
    const int q = static_cast<int>(offsets.size());

    std::vector<double> h(static_cast<size_t>(n));
    double cell_volume = 1.0;
    for (int j = 0; j < n; ++j) {
        h[static_cast<size_t>(j)] = box.extent(j) / cells;
        cell_volume *= h[static_cast<size_t>(j)];
    }

    std::vector<int> sizes(static_cast<size_t>(n), cells);
    std::vector<double> cell_values;
    cell_values.reserve(static_cast<size_t>(std::pow(static_cast<double>(cells), n)));
    std::vector<double> x(static_cast<size_t>(n));
    std::vector<int> qsizes(static_cast<size_t>(n), q);
    MultiIndex cell(sizes);
    do {
        double acc = 0.0;
        MultiIndex point(qsizes);
        do {
            double w = 1.0;
            for (int j = 0; j < n; ++j) {
                const int c = cell.get()[static_cast<size_t>(j)];
                const int p = point.get()[static_cast<size_t>(j)];
                x[static_cast<size_t>(j)] = box.lo[static_cast<size_t>(j)] +
                                            (c + offsets[static_cast<size_t>(p)]) * h[static_cast<size_t>(j)];
                w *= weights[static_cast<size_t>(p)];
            }
            acc += w * f(x);
        } while (point.advance());
        cell_values.push_back(acc * cell_volume);
    } while (cell.advance());
    return pairwise_sum(cell_values);
}

}  // namespace

double integrate_interior(const FormSum& top_form, const Domain& dom, const GridSpec& grid,
                          int cells_override)
{
    top_form.validate();
    dom.validate();
    grid.validate();
    if (top_form.degree != dom.dim())
        throw usage_error("integrate_interior: form degree must equal the domain dimension");
    if (top_form.ambient != dom.dim())
        throw usage_error("integrate_interior: ambient dimension mismatch");
    check_interior_support(top_form, dom);
    const int cells = cells_override > 0 ? cells_override : grid.cells_per_axis;
    const Box box = dom.clipped_box();
    return tensor_quadrature(
        [&](std::span<const double> x) { return volume_coefficient(top_form, x); }, box, grid,
        cells);
}

double integrate_boundary(const FormSum& form, const Domain& dom, const GridSpec& grid,
                          int cells_override, bool flip_orientation)
{
    form.validate();
    dom.validate();
    grid.validate();
    const int n = dom.dim();
    if (form.ambient != n) throw usage_error("integrate_boundary: ambient dimension mismatch");
    if (form.degree != n - 1)
        throw usage_error("integrate_boundary: form degree must be n - 1");
    if (dom.kind == DomainKind::FullSpace) return 0.0;  // empty boundary

    int sigma = orientation_sign(n);
    if (flip_orientation) sigma = -sigma;

    if (n == 1) {
        const double origin[1] = {0.0};
        std::vector<int> no_axes;
        return sigma * coefficient(form, no_axes, std::span<const double>(origin, 1));
    }

    check_boundary_support(form, dom);
    const Box box = dom.clipped_box();
    Box face;
    for (int j = 0; j + 1 < n; ++j) {
        face.lo.push_back(box.lo[static_cast<size_t>(j)]);
        face.hi.push_back(box.hi[static_cast<size_t>(j)]);
    }
    const int cells = cells_override > 0 ? cells_override : grid.cells_per_axis;
    const double integral = tensor_quadrature(
        [&](std::span<const double> xp) { return tangential_coefficient(form, xp); }, face, grid,
        cells);
    return sigma * integral;
}

std::vector<RefineRow> refine_sequence(const std::function<double(int)>& op, int base_cells,
                                       int levels)
{
    if (levels < 2) throw usage_error("refine_sequence: levels must be >= 2");
    if (base_cells < 2) throw usage_error("refine_sequence: base cells must be >= 2");
    std::vector<RefineRow> rows;
    int m = base_cells;
    for (int l = 0; l < levels; ++l, m *= 2) {
        const double value = op(m);
        const double diff = rows.empty() ? 0.0 : value - rows.back().value;
        rows.push_back({m, value, diff});
    }
    return rows;
}

}  // namespace lipform
