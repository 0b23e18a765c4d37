#pragma once

#include <memory>
#include <span>
#include <vector>

namespace lipform {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

// Primitive operations of the closed expression language. Fields built from
// these stay closed under composition, boundary restriction and Steklov
// averaging, which is what charts and mollification rely on.
enum class Op {
    Const,
    Coord,        // axis (0-based)
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Min,
    Max,
    Abs,
    Pwl,          // univariate piecewise-linear map of kids[0]; params = x0,y0,x1,y1,...
    Bump,         // univariate smooth bump of kids[0]; params = center, radius
    Sin,
    Cos,
    Sqrt,
    Atan2,        // kids[0] = y, kids[1] = x
    Compose,      // outer applied to the component expressions in kids
    Steklov,      // symmetric cube average of kids[0] over side eps
    SteklovDiff,  // exact partial (face-average difference) of Steklov(kids[0], eps) along axis
};

struct ExprNode {
    Op op;
    double value = 0.0;          // Const
    int axis = 0;                // Coord, SteklovDiff
    double eps = 0.0;            // Steklov, SteklovDiff
    std::vector<double> params;  // Pwl breakpoints, Bump center/radius
    std::vector<ExprPtr> kids;
    ExprPtr outer;               // Compose only
};

// Tolerances for the adaptive quadrature backing Steklov nodes. The cube
// average is resolved far below the commutation tolerance so that its central
// differences track the face-average derivative even when the cube straddles
// a kink of the integrand.
inline constexpr double kSteklovVolumeTol = 5e-12;
inline constexpr double kSteklovFaceTol = 1e-13;

double eval(const ExprNode& node, std::span<const double> x);

// Almost-everywhere partial derivative along `axis` (0-based). On the
// measure-zero kink sets of min/max/abs/pwl the tie resolves to the first
// argument's branch; in particular d|u|/du is +1 at u = 0.
double partial_ae(const ExprNode& node, int axis, std::span<const double> x);

// Node builders.
ExprPtr make_const(double c);
ExprPtr make_coord(int axis);
ExprPtr make_unary(Op op, ExprPtr a);
ExprPtr make_binary(Op op, ExprPtr a, ExprPtr b);
ExprPtr make_bump(ExprPtr arg, double center, double radius);
ExprPtr make_pwl(ExprPtr arg, std::vector<double> breakpoints);
ExprPtr make_compose(ExprPtr outer, std::vector<ExprPtr> components);
ExprPtr make_steklov(ExprPtr arg, double eps);
ExprPtr make_steklov_diff(ExprPtr arg, double eps, int axis);

// Smallest arity an expression can be evaluated at (1 + max coordinate index).
int min_arity(const ExprNode& node);

}  // namespace lipform
