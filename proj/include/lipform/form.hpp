#pragma once

#include <span>
#include <vector>

#include "lipform/field.hpp"

namespace lipform {

/// A simple Lipschitz k-form f dg_1 ^ ... ^ dg_k on R^n. Degree 0 means a
/// plain scalar field.
struct SimpleForm {
    ScalarField coefficient;          // f
    std::vector<ScalarField> factors; // g_1 .. g_k
    int ambient = 0;                  // n

    int degree() const { return static_cast<int>(factors.size()); }
    void validate() const;  // arity consistency, 0 <= k <= n
};

/// Finite sum of simple forms of equal ambient dimension and degree. The
/// empty sum is the zero form.
struct FormSum {
    std::vector<SimpleForm> terms;
    int ambient = 0;
    int degree = 0;

    void validate() const;
    static FormSum zero(int ambient, int degree) { return FormSum{{}, ambient, degree}; }
    static FormSum of(SimpleForm term);
};

/// Coefficient field b of a top form b dx_1 ^ ... ^ dx_n.
struct TopFormField {
    ScalarField b;
    int ambient = 0;
    void validate() const;
};

/// Leibniz exterior derivative d(f dg_1^...^dg_k) = df ^ dg_1 ^ ... ^ dg_k,
/// represented lazily: coefficient 1, factor list (f, g_1, ..., g_k).
/// Derivatives only appear when coefficients are evaluated. Throws
/// usage_error at top degree (represent d(top form) as FormSum::zero).
SimpleForm exterior_derivative(const SimpleForm& form);
FormSum exterior_derivative(const FormSum& form);

/// Coefficient of dx_{I_1} ^ ... ^ dx_{I_k} at x: f(x) * det of the k x k
/// matrix of partials dg_i/dx_{I_j}. `axes` is strictly increasing, 0-based.
double coefficient(const SimpleForm& form, std::span<const int> axes, std::span<const double> x);
double coefficient(const FormSum& form, std::span<const int> axes, std::span<const double> x);

/// Full Jacobian-determinant coefficient of a degree-n form.
double volume_coefficient(const SimpleForm& form, std::span<const double> x);
double volume_coefficient(const FormSum& form, std::span<const double> x);

/// Restriction coefficient a|_{x_n = 0} of a degree-(n-1) form, evaluated at
/// the boundary point (x', 0).
double tangential_coefficient(const SimpleForm& form, std::span<const double> x_prime);
double tangential_coefficient(const FormSum& form, std::span<const double> x_prime);

/// The degree-(n-1) form on R^{n-1} obtained by composing every member field
/// with the embedding x' -> (x', 0). Requires n >= 2.
FormSum restrict_to_boundary(const SimpleForm& form);
FormSum restrict_to_boundary(const FormSum& form);

/// det of a k x k matrix (row-major), LU with partial pivoting; k <= 8.
double small_det(std::span<const double> m, int k);

}  // namespace lipform
