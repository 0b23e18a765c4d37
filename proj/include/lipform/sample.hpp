#pragma once

#include <cstdint>
#include <vector>

#include "lipform/field.hpp"

namespace lipform {

/// Axis-aligned box.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    int dim() const { return static_cast<int>(lo.size()); }
    double extent(int axis) const { return hi[axis] - lo[axis]; }
    double volume() const;
    void validate() const;  // throws usage_error if empty or inconsistent
};

/// Deterministic jittered lattice of sample points. The jitter realizes
/// "almost everywhere": randomized offsets keep samples off the measure-zero
/// kink sets. Identical seeds reproduce identical points bit-for-bit.
struct SamplePlan {
    Box box;
    int count = 0;
    std::uint64_t jitter_seed = 1;
    double jitter_scale = 1.0;  // offsets of up to jitter_scale * half a lattice cell

    std::vector<std::vector<double>> points() const;
};

/// Max over sampled pairs of |f(x)-f(y)| / ||x-y||; a lower bound on the true
/// Lipschitz constant. Throws usage_error for plans with fewer than 2 points.
double lipschitz_estimate(const ScalarField& f, const SamplePlan& plan);

}  // namespace lipform
