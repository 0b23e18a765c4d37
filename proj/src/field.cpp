#include "lipform/field.hpp"

#include <cmath>
#include <string>

#include "lipform/errors.hpp"

namespace lipform {

namespace {

int joint_arity(const ScalarField& a, const ScalarField& b)
{
    if (a.arity() != b.arity())
        throw usage_error("field arity mismatch: " + std::to_string(a.arity()) + " vs " +
                          std::to_string(b.arity()));
    return a.arity();
}

std::optional<double> sum_bounds(const std::optional<double>& a, const std::optional<double>& b)
{
    if (a && b) return *a + *b;
    return std::nullopt;
}

std::optional<double> max_bounds(const std::optional<double>& a, const std::optional<double>& b)
{
    if (a && b) return std::max(*a, *b);
    return std::nullopt;
}

}  // namespace

double fd_step(double coordinate)
{
    return std::max(1e-6, 1e-8 * (1.0 + std::abs(coordinate)));
}

ScalarField::ScalarField(int arity, ExprPtr root, std::optional<double> lip_bound, DerivMode mode)
    : arity_(arity), root_(std::move(root)), lip_bound_(lip_bound), mode_(mode)
{
    if (arity_ < 1) throw usage_error("ScalarField: arity must be >= 1");
    if (!root_) throw usage_error("ScalarField: null expression");
    if (min_arity(*root_) > arity_)
        throw usage_error("ScalarField: expression references coordinate beyond arity " +
                          std::to_string(arity_));
    if (lip_bound_ && *lip_bound_ < 0.0) throw usage_error("ScalarField: negative lip_bound");
}

double ScalarField::operator()(std::span<const double> x) const
{
    if (static_cast<int>(x.size()) != arity_)
        throw usage_error("eval: point dimension " + std::to_string(x.size()) +
                          " does not match arity " + std::to_string(arity_));
    return eval(*root_, x);
}

double ScalarField::operator()(std::initializer_list<double> x) const
{
    return (*this)(std::span<const double>(x.begin(), x.size()));
}

double ScalarField::partial(int axis, std::span<const double> x) const
{
    if (static_cast<int>(x.size()) != arity_)
        throw usage_error("partial: point dimension does not match arity");
    if (axis < 0 || axis >= arity_)
        throw usage_error("partial: axis " + std::to_string(axis) + " out of range for arity " +
                          std::to_string(arity_));
    if (mode_ == DerivMode::AnalyticAe) return partial_ae(*root_, axis, x);
    const double h = fd_step(x[static_cast<size_t>(axis)]);
    std::vector<double> p(x.begin(), x.end());
    p[static_cast<size_t>(axis)] += h;
    const double hi = eval(*root_, p);
    p[static_cast<size_t>(axis)] = x[static_cast<size_t>(axis)] - h;
    const double lo = eval(*root_, p);
    return (hi - lo) / (2.0 * h);
}

double ScalarField::partial(int axis, std::initializer_list<double> x) const
{
    return partial(axis, std::span<const double>(x.begin(), x.size()));
}

ScalarField ScalarField::with_lip_bound(double bound) const
{
    return ScalarField(arity_, root_, bound, mode_);
}

ScalarField ScalarField::with_derivative_mode(DerivMode mode) const
{
    return ScalarField(arity_, root_, lip_bound_, mode);
}

ScalarField ScalarField::compose(const std::vector<ScalarField>& inner) const
{
    if (static_cast<int>(inner.size()) != arity_)
        throw usage_error("compose: expected " + std::to_string(arity_) + " components, got " +
                          std::to_string(inner.size()));
    const int m = inner.front().arity();
    std::vector<ExprPtr> components;
    components.reserve(inner.size());
    for (const auto& g : inner) {
        if (g.arity() != m) throw usage_error("compose: components must share one arity");
        components.push_back(g.root());
    }
    return ScalarField(m, make_compose(root_, std::move(components)), std::nullopt, mode_);
}

ScalarField ScalarField::constant(int arity, double c)
{
    return ScalarField(arity, make_const(c), 0.0);
}

ScalarField ScalarField::coordinate(int arity, int axis)
{
    if (axis < 0 || axis >= arity) throw usage_error("coordinate: axis out of range");
    return ScalarField(arity, make_coord(axis), 1.0);
}

ScalarField operator+(const ScalarField& a, const ScalarField& b)
{
    return ScalarField(joint_arity(a, b), make_binary(Op::Add, a.root(), b.root()),
                       sum_bounds(a.lip_bound(), b.lip_bound()));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b)
{
    return ScalarField(joint_arity(a, b), make_binary(Op::Sub, a.root(), b.root()),
                       sum_bounds(a.lip_bound(), b.lip_bound()));
}

ScalarField operator*(const ScalarField& a, const ScalarField& b)
{
    return ScalarField(joint_arity(a, b), make_binary(Op::Mul, a.root(), b.root()));
}

ScalarField operator/(const ScalarField& a, const ScalarField& b)
{
    return ScalarField(joint_arity(a, b), make_binary(Op::Div, a.root(), b.root()));
}

ScalarField operator-(const ScalarField& a)
{
    return ScalarField(a.arity(), make_unary(Op::Neg, a.root()), a.lip_bound());
}

ScalarField operator*(double c, const ScalarField& a)
{
    std::optional<double> bound;
    if (a.lip_bound()) bound = std::abs(c) * *a.lip_bound();
    return ScalarField(a.arity(), make_binary(Op::Mul, make_const(c), a.root()), bound);
}

ScalarField min(const ScalarField& a, const ScalarField& b)
{
    return ScalarField(joint_arity(a, b), make_binary(Op::Min, a.root(), b.root()),
                       max_bounds(a.lip_bound(), b.lip_bound()));
}

ScalarField max(const ScalarField& a, const ScalarField& b)
{
    return ScalarField(joint_arity(a, b), make_binary(Op::Max, a.root(), b.root()),
                       max_bounds(a.lip_bound(), b.lip_bound()));
}

ScalarField abs(const ScalarField& a)
{
    return ScalarField(a.arity(), make_unary(Op::Abs, a.root()), a.lip_bound());
}

ScalarField bump(const ScalarField& arg, double center, double radius)
{
    std::optional<double> bound;
    if (arg.lip_bound()) bound = *arg.lip_bound() * kBumpSlopeMax / radius;
    return ScalarField(arg.arity(), make_bump(arg.root(), center, radius), bound);
}

ScalarField bump_cube(int arity, double center, double radius)
{
    ScalarField acc = bump(ScalarField::coordinate(arity, 0), center, radius);
    for (int j = 1; j < arity; ++j)
        acc = acc * bump(ScalarField::coordinate(arity, j), center, radius);
    // Each factor is bounded by 1, so the product's gradient is bounded
    // componentwise by the univariate slope maximum.
    return acc.with_lip_bound(kBumpSlopeMax / radius * std::sqrt(static_cast<double>(arity)));
}

ScalarField pwl(const ScalarField& arg, std::vector<double> breakpoints)
{
    ScalarField out(arg.arity(), make_pwl(arg.root(), std::move(breakpoints)));
    return out;
}

ScalarField sin(const ScalarField& a)
{
    return ScalarField(a.arity(), make_unary(Op::Sin, a.root()), a.lip_bound());
}

ScalarField cos(const ScalarField& a)
{
    return ScalarField(a.arity(), make_unary(Op::Cos, a.root()), a.lip_bound());
}

ScalarField sqrt(const ScalarField& a)
{
    return ScalarField(a.arity(), make_unary(Op::Sqrt, a.root()));
}

ScalarField atan2(const ScalarField& y, const ScalarField& x)
{
    return ScalarField(joint_arity(y, x), make_binary(Op::Atan2, y.root(), x.root()));
}

}  // namespace lipform
