#include "lipform/expr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "lipform/quadrature.hpp"

namespace lipform {

namespace {

double bump_value(double u, double center, double radius)
{
    const double v = (u - center) / radius;
    const double w = 1.0 - v * v;
    if (w <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / w);
}

double bump_slope(double u, double center, double radius)
{
    const double v = (u - center) / radius;
    const double w = 1.0 - v * v;
    if (w <= 0.0) return 0.0;
    return bump_value(u, center, radius) * (-2.0 * v / (w * w)) / radius;
}

// Right-continuous segment lookup: u exactly at a breakpoint belongs to the
// segment on its right.
size_t pwl_segment(const std::vector<double>& p, double u)
{
    const size_t pairs = p.size() / 2;
    size_t k = 0;
    while (k + 2 < pairs && u >= p[2 * (k + 1)]) ++k;
    return k;
}

double pwl_value(const std::vector<double>& p, double u)
{
    const size_t pairs = p.size() / 2;
    if (pairs == 1) return p[1];
    const size_t k = pwl_segment(p, u);
    const double x0 = p[2 * k], y0 = p[2 * k + 1];
    const double x1 = p[2 * k + 2], y1 = p[2 * k + 3];
    const double s = (y1 - y0) / (x1 - x0);
    return y0 + s * (u - x0);
}

double pwl_slope(const std::vector<double>& p, double u)
{
    const size_t pairs = p.size() / 2;
    if (pairs == 1) return 0.0;
    const size_t k = pwl_segment(p, u);
    const double x0 = p[2 * k], y0 = p[2 * k + 1];
    const double x1 = p[2 * k + 2], y1 = p[2 * k + 3];
    return (y1 - y0) / (x1 - x0);
}

// Average of f over the cube x + [-eps/2, eps/2]^n, skipping `skip_axis` if
// nonnegative (which yields the face average with buf[skip_axis] preset).
double iterated_average(const ExprNode& f, std::span<const double> x, double eps,
                        std::vector<double>& buf, int skip_axis, double axis_tol)
{
    const int n = static_cast<int>(x.size());
    std::function<double(int)> level = [&](int k) -> double {
        while (k < n && k == skip_axis) ++k;
        if (k >= n) return eval(f, buf);
        const double integral = adaptive_line_integral(
            [&](double t) {
                buf[k] = x[k] + t;
                return level(k + 1);
            },
            -0.5 * eps, 0.5 * eps, axis_tol);
        buf[k] = x[k];
        return integral / eps;
    };
    return level(0);
}

double cube_average(const ExprNode& f, std::span<const double> x, double eps)
{
    const int n = static_cast<int>(x.size());
    std::vector<double> buf(x.begin(), x.end());
    const double axis_tol = kSteklovVolumeTol * eps / n;
    return iterated_average(f, x, eps, buf, -1, axis_tol);
}

// Exact derivative of the cube average: difference of the two face averages
// orthogonal to `axis`, divided by eps. Needs no differentiability of f.
double face_difference(const ExprNode& f, std::span<const double> x, double eps, int axis)
{
    const int n = static_cast<int>(x.size());
    std::vector<double> buf(x.begin(), x.end());
    const double axis_tol = n > 1 ? kSteklovFaceTol * eps / (n - 1) : 0.0;
    buf[axis] = x[axis] + 0.5 * eps;
    const double hi = iterated_average(f, x, eps, buf, axis, axis_tol);
    buf[axis] = x[axis] - 0.5 * eps;
    const double lo = iterated_average(f, x, eps, buf, axis, axis_tol);
    return (hi - lo) / eps;
}

}  // namespace

double eval(const ExprNode& node, std::span<const double> x)
{
    switch (node.op) {
        case Op::Const: return node.value;
        case Op::Coord: return x[static_cast<size_t>(node.axis)];
        case Op::Add: return eval(*node.kids[0], x) + eval(*node.kids[1], x);
        case Op::Sub: return eval(*node.kids[0], x) - eval(*node.kids[1], x);
        case Op::Mul: return eval(*node.kids[0], x) * eval(*node.kids[1], x);
        case Op::Div: return eval(*node.kids[0], x) / eval(*node.kids[1], x);
        case Op::Neg: return -eval(*node.kids[0], x);
        case Op::Min: {
            const double a = eval(*node.kids[0], x);
            const double b = eval(*node.kids[1], x);
            return a <= b ? a : b;
        }
        case Op::Max: {
            const double a = eval(*node.kids[0], x);
            const double b = eval(*node.kids[1], x);
            return a >= b ? a : b;
        }
        case Op::Abs: return std::abs(eval(*node.kids[0], x));
        case Op::Pwl: return pwl_value(node.params, eval(*node.kids[0], x));
        case Op::Bump: return bump_value(eval(*node.kids[0], x), node.params[0], node.params[1]);
        case Op::Sin: return std::sin(eval(*node.kids[0], x));
        case Op::Cos: return std::cos(eval(*node.kids[0], x));
        case Op::Sqrt: return std::sqrt(eval(*node.kids[0], x));
        case Op::Atan2: return std::atan2(eval(*node.kids[0], x), eval(*node.kids[1], x));
        case Op::Compose: {
            std::vector<double> y(node.kids.size());
            for (size_t i = 0; i < node.kids.size(); ++i) y[i] = eval(*node.kids[i], x);
            return eval(*node.outer, y);
        }
        case Op::Steklov: return cube_average(*node.kids[0], x, node.eps);
        case Op::SteklovDiff: return face_difference(*node.kids[0], x, node.eps, node.axis);
    }
    throw std::logic_error("eval: bad op");
}

double partial_ae(const ExprNode& node, int axis, std::span<const double> x)
{
    switch (node.op) {
        case Op::Const: return 0.0;
        case Op::Coord: return node.axis == axis ? 1.0 : 0.0;
        case Op::Add: return partial_ae(*node.kids[0], axis, x) + partial_ae(*node.kids[1], axis, x);
        case Op::Sub: return partial_ae(*node.kids[0], axis, x) - partial_ae(*node.kids[1], axis, x);
        case Op::Mul:
            return partial_ae(*node.kids[0], axis, x) * eval(*node.kids[1], x) +
                   eval(*node.kids[0], x) * partial_ae(*node.kids[1], axis, x);
        case Op::Div: {
            const double a = eval(*node.kids[0], x);
            const double b = eval(*node.kids[1], x);
            return (partial_ae(*node.kids[0], axis, x) * b - a * partial_ae(*node.kids[1], axis, x)) /
                   (b * b);
        }
        case Op::Neg: return -partial_ae(*node.kids[0], axis, x);
        case Op::Min: {
            const double a = eval(*node.kids[0], x);
            const double b = eval(*node.kids[1], x);
            return a <= b ? partial_ae(*node.kids[0], axis, x) : partial_ae(*node.kids[1], axis, x);
        }
        case Op::Max: {
            const double a = eval(*node.kids[0], x);
            const double b = eval(*node.kids[1], x);
            return a >= b ? partial_ae(*node.kids[0], axis, x) : partial_ae(*node.kids[1], axis, x);
        }
        case Op::Abs: {
            const double u = eval(*node.kids[0], x);
            const double s = u >= 0.0 ? 1.0 : -1.0;
            return s * partial_ae(*node.kids[0], axis, x);
        }
        case Op::Pwl:
            return pwl_slope(node.params, eval(*node.kids[0], x)) *
                   partial_ae(*node.kids[0], axis, x);
        case Op::Bump:
            return bump_slope(eval(*node.kids[0], x), node.params[0], node.params[1]) *
                   partial_ae(*node.kids[0], axis, x);
        case Op::Sin: return std::cos(eval(*node.kids[0], x)) * partial_ae(*node.kids[0], axis, x);
        case Op::Cos: return -std::sin(eval(*node.kids[0], x)) * partial_ae(*node.kids[0], axis, x);
        case Op::Sqrt: {
            const double u = eval(*node.kids[0], x);
            return partial_ae(*node.kids[0], axis, x) / (2.0 * std::sqrt(u));
        }
        case Op::Atan2: {
            const double y = eval(*node.kids[0], x);
            const double c = eval(*node.kids[1], x);
            const double dy = partial_ae(*node.kids[0], axis, x);
            const double dc = partial_ae(*node.kids[1], axis, x);
            return (dy * c - dc * y) / (y * y + c * c);
        }
        case Op::Compose: {
            std::vector<double> y(node.kids.size());
            for (size_t i = 0; i < node.kids.size(); ++i) y[i] = eval(*node.kids[i], x);
            double acc = 0.0;
            for (size_t i = 0; i < node.kids.size(); ++i) {
                const double dk = partial_ae(*node.kids[i], axis, x);
                if (dk != 0.0) acc += partial_ae(*node.outer, static_cast<int>(i), y) * dk;
            }
            return acc;
        }
        case Op::Steklov: return face_difference(*node.kids[0], x, node.eps, axis);
        case Op::SteklovDiff: {
            // Second derivative of a mollified field: finite-difference fallback.
            const double h = std::max(1e-6, 1e-8 * (1.0 + std::abs(x[static_cast<size_t>(axis)])));
            std::vector<double> p(x.begin(), x.end());
            p[static_cast<size_t>(axis)] = x[static_cast<size_t>(axis)] + h;
            const double hi = eval(node, p);
            p[static_cast<size_t>(axis)] = x[static_cast<size_t>(axis)] - h;
            const double lo = eval(node, p);
            return (hi - lo) / (2.0 * h);
        }
    }
    throw std::logic_error("partial_ae: bad op");
}

ExprPtr make_const(double c)
{
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Const;
    n->value = c;
    return n;
}

ExprPtr make_coord(int axis)
{
    if (axis < 0) throw std::invalid_argument("make_coord: negative axis");
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Coord;
    n->axis = axis;
    return n;
}

ExprPtr make_unary(Op op, ExprPtr a)
{
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->kids = {std::move(a)};
    return n;
}

ExprPtr make_binary(Op op, ExprPtr a, ExprPtr b)
{
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->kids = {std::move(a), std::move(b)};
    return n;
}

ExprPtr make_bump(ExprPtr arg, double center, double radius)
{
    if (!(radius > 0.0)) throw std::invalid_argument("bump: radius must be positive");
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Bump;
    n->params = {center, radius};
    n->kids = {std::move(arg)};
    return n;
}

ExprPtr make_pwl(ExprPtr arg, std::vector<double> breakpoints)
{
    if (breakpoints.size() < 2 || breakpoints.size() % 2 != 0)
        throw std::invalid_argument("pwl: need an even number (>= 2) of breakpoint values");
    for (size_t i = 2; i < breakpoints.size(); i += 2)
        if (!(breakpoints[i] > breakpoints[i - 2]))
            throw std::invalid_argument("pwl: breakpoint abscissae must be strictly increasing");
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Pwl;
    n->params = std::move(breakpoints);
    n->kids = {std::move(arg)};
    return n;
}

ExprPtr make_compose(ExprPtr outer, std::vector<ExprPtr> components)
{
    if (components.empty()) throw std::invalid_argument("compose: no components");
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Compose;
    n->outer = std::move(outer);
    n->kids = std::move(components);
    return n;
}

ExprPtr make_steklov(ExprPtr arg, double eps)
{
    if (!(eps > 0.0)) throw std::invalid_argument("steklov: eps must be positive");
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Steklov;
    n->eps = eps;
    n->kids = {std::move(arg)};
    return n;
}

ExprPtr make_steklov_diff(ExprPtr arg, double eps, int axis)
{
    if (!(eps > 0.0)) throw std::invalid_argument("steklov_diff: eps must be positive");
    if (axis < 0) throw std::invalid_argument("steklov_diff: negative axis");
    auto n = std::make_shared<ExprNode>();
    n->op = Op::SteklovDiff;
    n->eps = eps;
    n->axis = axis;
    n->kids = {std::move(arg)};
    return n;
}

int min_arity(const ExprNode& node)
{
    int arity = node.op == Op::Coord ? node.axis + 1 : 0;
    if (node.op == Op::SteklovDiff) arity = std::max(arity, node.axis + 1);
    // For Compose the outer tree indexes components, not ambient coordinates,
    // so only the kids count.
    for (const auto& k : node.kids) arity = std::max(arity, min_arity(*k));
    return arity;
}

}  // namespace lipform
