#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace lipform {

struct LevelRow {
    int level = 0;
    int cells = 0;
    double boundary = 0.0;
    double interior = 0.0;
    double residual = 0.0;
};

struct MollifyRow {
    double eps = 0.0;
    double boundary = 0.0;
    double interior = 0.0;
};

/// Result of a Stokes verification run: the two integrals at the finest grid,
/// their residual, the refinement ladder, and (when a schedule was supplied)
/// the mollified integral sequences.
struct StokesReport {
    std::string scenario;
    double boundary_integral = 0.0;
    double interior_integral = 0.0;
    double residual = 0.0;           // boundary - interior
    double relative_residual = 0.0;  // |residual| / (1 + |interior|)
    std::vector<LevelRow> levels;
    std::vector<MollifyRow> mollification;

    nlohmann::json to_json() const;
    /// Columns: level, m, boundary_integral, interior_integral, residual.
    void write_csv(std::ostream& os) const;
};

}  // namespace lipform
