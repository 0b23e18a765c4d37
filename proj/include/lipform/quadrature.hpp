#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lipform {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule with `order` points, computed once and cached.
const GaussRule& gauss_rule(int order);

// Integral of f over [a, b] by adaptive bisection of Gauss-8 panels down to
// an absolute tolerance. Smooth integrands terminate on one panel; kinked
// integrands refine locally around the kink.
double adaptive_line_integral(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_depth = 48);

// Deterministic pairwise reduction; the accumulation tree depends only on the
// length of the input.
double pairwise_sum(std::span<const double> values);

}  // namespace lipform
