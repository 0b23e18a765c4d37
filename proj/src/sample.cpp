#include "lipform/sample.hpp"

#include <cmath>
#include <random>
#include <string>

#include "lipform/errors.hpp"

namespace lipform {

double Box::volume() const
{
    double v = 1.0;
    for (int j = 0; j < dim(); ++j) v *= extent(j);
    return v;
}

void Box::validate() const
{
    if (lo.empty() || lo.size() != hi.size()) throw usage_error("Box: inconsistent bounds");
    for (size_t j = 0; j < lo.size(); ++j)
        if (!(lo[j] < hi[j]))
            throw usage_error("Box: empty along axis " + std::to_string(j + 1));
}

namespace {

// Engine output mapped to [0,1) explicitly; uniform_real_distribution is not
// bit-reproducible across standard library implementations.
double unit_double(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<std::vector<double>> SamplePlan::points() const
{
    box.validate();
    if (count < 1) throw usage_error("SamplePlan: count must be >= 1");
    if (!(jitter_scale > 0.0)) throw usage_error("SamplePlan: jitter_scale must be positive");

    const int n = box.dim();
    const int per_axis =
        std::max(1, static_cast<int>(std::ceil(std::pow(static_cast<double>(count), 1.0 / n))));

    std::mt19937_64 rng(jitter_seed);
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<size_t>(count));
    std::vector<int> idx(static_cast<size_t>(n), 0);
    for (int p = 0; p < count; ++p) {
        std::vector<double> x(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double cell = box.extent(j) / per_axis;
            const double center = box.lo[static_cast<size_t>(j)] + (idx[static_cast<size_t>(j)] + 0.5) * cell;
            const double offset = (2.0 * unit_double(rng) - 1.0) * 0.5 * cell * jitter_scale;
            double v = center + offset;
            v = std::min(std::max(v, box.lo[static_cast<size_t>(j)]), box.hi[static_cast<size_t>(j)]);
            x[static_cast<size_t>(j)] = v;
        }
        out.push_back(std::move(x));
        // row-major walk of the lattice, wrapping when count exceeds it
        for (int j = 0; j < n; ++j) {
            if (++idx[static_cast<size_t>(j)] < per_axis) break;
            idx[static_cast<size_t>(j)] = 0;
        }
    }
    return out;
}

double lipschitz_estimate(const ScalarField& f, const SamplePlan& plan)
{
    const auto pts = plan.points();
    if (pts.size() < 2) throw usage_error("lipschitz_estimate: plan must yield at least 2 points");
    std::vector<double> values(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) values[i] = f(pts[i]);

    double best = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            double d2 = 0.0;
            for (size_t k = 0; k < pts[i].size(); ++k) {
                const double d = pts[i][k] - pts[j][k];
                d2 += d * d;
            }
            if (d2 == 0.0) continue;
            const double slope = std::abs(values[i] - values[j]) / std::sqrt(d2);
            if (slope > best) best = slope;
        }
    }
    return best;
}

}  // namespace lipform
