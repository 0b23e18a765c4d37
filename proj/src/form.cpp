#include "lipform/form.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "lipform/errors.hpp"

namespace lipform {

void SimpleForm::validate() const
{
    if (ambient < 1) throw usage_error("SimpleForm: ambient dimension must be >= 1");
    if (coefficient.arity() != ambient)
        throw usage_error("SimpleForm: coefficient arity does not match ambient dimension");
    for (const auto& g : factors)
        if (g.arity() != ambient)
            throw usage_error("SimpleForm: factor arity does not match ambient dimension");
    if (degree() > ambient)
        throw usage_error("SimpleForm: degree " + std::to_string(degree()) +
                          " exceeds ambient dimension " + std::to_string(ambient));
}

void FormSum::validate() const
{
    if (ambient < 1) throw usage_error("FormSum: ambient dimension must be >= 1");
    if (degree < 0 || degree > ambient) throw usage_error("FormSum: bad degree");
    for (const auto& t : terms) {
        t.validate();
        if (t.ambient != ambient || t.degree() != degree)
            throw usage_error("FormSum: mixed ambient dimensions or degrees");
    }
}

FormSum FormSum::of(SimpleForm term)
{
    term.validate();
    FormSum s;
    s.ambient = term.ambient;
    s.degree = term.degree();
    s.terms.push_back(std::move(term));
    return s;
}

void TopFormField::validate() const
{
    if (b.arity() != ambient) throw usage_error("TopFormField: arity does not match ambient");
}

SimpleForm exterior_derivative(const SimpleForm& form)
{
    form.validate();
    if (form.degree() == form.ambient)
        throw usage_error("exterior_derivative: top forms have zero derivative; "
                          "represent it as an empty FormSum");
    SimpleForm d;
    d.ambient = form.ambient;
    d.coefficient = ScalarField::constant(form.ambient, 1.0);
    d.factors.reserve(form.factors.size() + 1);
    d.factors.push_back(form.coefficient);
    for (const auto& g : form.factors) d.factors.push_back(g);
    return d;
}

FormSum exterior_derivative(const FormSum& form)
{
    form.validate();
    FormSum d = FormSum::zero(form.ambient, form.degree + 1);
    for (const auto& t : form.terms) d.terms.push_back(exterior_derivative(t));
    return d;
}

double small_det(std::span<const double> m, int k)
{
    if (k == 0) return 1.0;
    if (k == 1) return m[0];
    if (k == 2) return m[0] * m[3] - m[1] * m[2];
    std::array<double, 64> a{};
    for (int i = 0; i < k * k; ++i) a[static_cast<size_t>(i)] = m[static_cast<size_t>(i)];
    double det = 1.0;
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(a[static_cast<size_t>(r * k + col)]) >
                std::abs(a[static_cast<size_t>(pivot * k + col)]))
                pivot = r;
        if (a[static_cast<size_t>(pivot * k + col)] == 0.0) return 0.0;
        if (pivot != col) {
            for (int c = col; c < k; ++c)
                std::swap(a[static_cast<size_t>(pivot * k + c)], a[static_cast<size_t>(col * k + c)]);
            det = -det;
        }
        det *= a[static_cast<size_t>(col * k + col)];
        for (int r = col + 1; r < k; ++r) {
            const double factor = a[static_cast<size_t>(r * k + col)] / a[static_cast<size_t>(col * k + col)];
            for (int c = col; c < k; ++c)
                a[static_cast<size_t>(r * k + c)] -= factor * a[static_cast<size_t>(col * k + c)];
        }
    }
    return det;
}

namespace {

void check_axes(std::span<const int> axes, int ambient, int degree)
{
    if (static_cast<int>(axes.size()) != degree)
        throw usage_error("coefficient: multi-index length does not match form degree");
    int prev = -1;
    for (int a : axes) {
        if (a <= prev || a < 0 || a >= ambient)
            throw usage_error("coefficient: multi-index must be strictly increasing within 0.." +
                              std::to_string(ambient - 1));
        prev = a;
    }
}

}  // namespace

double coefficient(const SimpleForm& form, std::span<const int> axes, std::span<const double> x)
{
    form.validate();
    check_axes(axes, form.ambient, form.degree());
    const int k = form.degree();
    const double f = form.coefficient(x);
    if (k == 0) return f;
    std::array<double, 64> jac{};
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            jac[static_cast<size_t>(i * k + j)] = form.factors[static_cast<size_t>(i)].partial(axes[static_cast<size_t>(j)], x);
    return f * small_det(std::span<const double>(jac.data(), static_cast<size_t>(k * k)), k);
}

double coefficient(const FormSum& form, std::span<const int> axes, std::span<const double> x)
{
    form.validate();
    check_axes(axes, form.ambient, form.degree);
    double acc = 0.0;
    for (const auto& t : form.terms) acc += coefficient(t, axes, x);
    return acc;
}

namespace {

std::vector<int> full_index(int n)
{
    std::vector<int> idx(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

}  // namespace

double volume_coefficient(const SimpleForm& form, std::span<const double> x)
{
    if (form.degree() != form.ambient)
        throw usage_error("volume_coefficient: form degree must equal ambient dimension");
    return coefficient(form, full_index(form.ambient), x);
}

double volume_coefficient(const FormSum& form, std::span<const double> x)
{
    if (form.degree != form.ambient)
        throw usage_error("volume_coefficient: form degree must equal ambient dimension");
    return coefficient(form, full_index(form.ambient), x);
}

namespace {

std::vector<double> embed_boundary_point(std::span<const double> x_prime)
{
    std::vector<double> x(x_prime.begin(), x_prime.end());
    x.push_back(0.0);
    return x;
}

}  // namespace

double tangential_coefficient(const SimpleForm& form, std::span<const double> x_prime)
{
    if (form.degree() != form.ambient - 1)
        throw usage_error("tangential_coefficient: form degree must be ambient - 1");
    const auto x = embed_boundary_point(x_prime);
    return coefficient(form, full_index(form.ambient - 1), x);
}

double tangential_coefficient(const FormSum& form, std::span<const double> x_prime)
{
    if (form.degree != form.ambient - 1)
        throw usage_error("tangential_coefficient: form degree must be ambient - 1");
    const auto x = embed_boundary_point(x_prime);
    return coefficient(form, full_index(form.ambient - 1), x);
}

namespace {

// x' -> (x', 0) as a vector of fields over R^{n-1}.
std::vector<ScalarField> boundary_embedding(int n)
{
    std::vector<ScalarField> emb;
    emb.reserve(static_cast<size_t>(n));
    for (int j = 0; j + 1 < n; ++j) emb.push_back(ScalarField::coordinate(n - 1, j));
    emb.push_back(ScalarField::constant(n - 1, 0.0));
    return emb;
}

}  // namespace

FormSum restrict_to_boundary(const SimpleForm& form)
{
    form.validate();
    if (form.ambient < 2)
        throw usage_error("restrict_to_boundary: boundary of H^1 is a point; handled by the "
                          "integrator, not by restriction");
    if (form.degree() != form.ambient - 1)
        throw usage_error("restrict_to_boundary: form degree must be ambient - 1");
    const auto emb = boundary_embedding(form.ambient);
    SimpleForm r;
    r.ambient = form.ambient - 1;
    r.coefficient = form.coefficient.compose(emb);
    // The factor involving only x_n drops rank; composition with the embedding
    // realizes that automatically through the vanishing partials.
    r.factors.reserve(form.factors.size());
    for (const auto& g : form.factors) r.factors.push_back(g.compose(emb));
    return FormSum::of(std::move(r));
}

FormSum restrict_to_boundary(const FormSum& form)
{
    form.validate();
    if (form.ambient < 2) throw usage_error("restrict_to_boundary: ambient must be >= 2");
    FormSum out = FormSum::zero(form.ambient - 1, form.degree);
    for (const auto& t : form.terms) {
        auto r = restrict_to_boundary(t);
        for (auto& rt : r.terms) out.terms.push_back(std::move(rt));
    }
    return out;
}

}  // namespace lipform
