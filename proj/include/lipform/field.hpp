#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lipform/expr.hpp"

namespace lipform {

enum class DerivMode { AnalyticAe, FiniteDifference };

/// An evaluable Lipschitz map R^n -> R with almost-everywhere partial
/// derivatives. Immutable; safe to evaluate concurrently.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(int arity, ExprPtr root, std::optional<double> lip_bound = {},
                DerivMode mode = DerivMode::AnalyticAe);

    int arity() const { return arity_; }
    const ExprPtr& root() const { return root_; }
    std::optional<double> lip_bound() const { return lip_bound_; }
    DerivMode derivative_mode() const { return mode_; }

    double operator()(std::span<const double> x) const;
    double operator()(std::initializer_list<double> x) const;

    /// A.e. partial derivative along `axis` (0-based).
    double partial(int axis, std::span<const double> x) const;
    double partial(int axis, std::initializer_list<double> x) const;

    ScalarField with_lip_bound(double bound) const;
    ScalarField with_derivative_mode(DerivMode mode) const;

    /// f composed with `inner`; all inner fields must share one arity, and
    /// there must be exactly arity() of them.
    ScalarField compose(const std::vector<ScalarField>& inner) const;

    static ScalarField constant(int arity, double c);
    static ScalarField coordinate(int arity, int axis);  // 0-based

private:
    int arity_ = 0;
    ExprPtr root_;
    std::optional<double> lip_bound_;
    DerivMode mode_ = DerivMode::AnalyticAe;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);
ScalarField operator*(double c, const ScalarField& a);

ScalarField min(const ScalarField& a, const ScalarField& b);
ScalarField max(const ScalarField& a, const ScalarField& b);
ScalarField abs(const ScalarField& a);

/// Univariate smooth bump of `arg`: exp(1 - 1/(1 - v^2)) with
/// v = (arg - center)/radius inside |v| < 1, zero outside; value 1 at center.
ScalarField bump(const ScalarField& arg, double center, double radius);

/// Product of univariate bumps over all coordinates; compactly supported in
/// the cube of half-side `radius` around (center, ..., center).
ScalarField bump_cube(int arity, double center, double radius);

/// Piecewise-linear map of `arg`, breakpoints as x0,y0,x1,y1,... with end
/// slopes extended.
ScalarField pwl(const ScalarField& arg, std::vector<double> breakpoints);

ScalarField sin(const ScalarField& a);
ScalarField cos(const ScalarField& a);
ScalarField sqrt(const ScalarField& a);
ScalarField atan2(const ScalarField& y, const ScalarField& x);

/// Supremum of |d beta/du| for the unit-radius bump; the Lipschitz constant
/// of bump(arg, c, r) is at most this over r times Lip(arg).
inline constexpr double kBumpSlopeMax = 2.1703570857062;  // attained near v = 0.7598

// Finite-difference step used by DerivMode::FiniteDifference.
double fd_step(double coordinate);

}  // namespace lipform
