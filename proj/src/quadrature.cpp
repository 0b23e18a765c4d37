#include "lipform/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace lipform {

namespace {

// Newton iteration on Legendre polynomials, seeded from the Chebyshev-like
// asymptotic root estimate.
GaussRule compute_gauss(int order)
{
    if (order < 1 || order > 64) throw std::invalid_argument("gauss_rule: order out of range");
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int n = order;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace

const GaussRule& gauss_rule(int order)
{
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss(order)).first;
    return it->second;
}

namespace {

// Gauss-Lobatto 8 panel rule. The endpoint nodes matter: a kink of the
// integrand sitting just inside a panel edge is invisible to interior-node
// rules (every bisection level integrates the wrong smooth branch exactly and
// the refinement test passes), while an endpoint sample exposes the branch
// mismatch and keeps the subdivision going until the kink is panel-interior.
double lobatto8_panel(const std::function<double(double)>& f, double a, double b)
{
    static constexpr double nodes[8] = {
        -1.0, -0.8717401485096066153, -0.5917001814331423021, -0.2092992179024788687,
        0.2092992179024788687, 0.5917001814331423021, 0.8717401485096066153, 1.0};
    static constexpr double weights[8] = {
        0.03571428571428571429, 0.2107042271435060394, 0.3411226924835043648,
        0.4124587946587038816,  0.4124587946587038816, 0.3411226924835043648,
        0.2107042271435060394,  0.03571428571428571429};
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 8; ++i) acc += weights[i] * f(mid + half * nodes[i]);
    return acc * half;
}

// Accepts a panel only after two consecutive bisection levels agree within
// tol: a kink sitting near a node can make a single agreement coincidental.
double adapt(const std::function<double(double)>& f, double a, double b, double whole,
             double tol, int depth, int agree_streak)
{
    const double mid = 0.5 * (a + b);
    const double left = lobatto8_panel(f, a, mid);
    const double right = lobatto8_panel(f, mid, b);
    const double refined = left + right;
    const bool agree = std::abs(refined - whole) <= tol;
    if (depth <= 0 || (agree && agree_streak >= 1)) return refined;
    const double half_tol = 0.5 * tol;
    const int streak = agree ? agree_streak + 1 : 0;
    return adapt(f, a, mid, left, half_tol, depth - 1, streak) +
           adapt(f, mid, b, right, half_tol, depth - 1, streak);
}

}  // namespace

double adaptive_line_integral(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_depth)
{
    if (a == b) return 0.0;
    return adapt(f, a, b, lobatto8_panel(f, a, b), abs_tol, max_depth, 0);
}

double pairwise_sum(std::span<const double> values)
{
    const size_t n = values.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace lipform
