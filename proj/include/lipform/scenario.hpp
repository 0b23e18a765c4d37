#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "lipform/manifold.hpp"
#include "lipform/mollify.hpp"
#include "lipform/report.hpp"

namespace lipform {

inline constexpr int kSchemaVersion = 1;

struct MollifyConfig {
    MollificationSchedule schedule;
    int cells = 0;  // 0 means grid.cells_per_axis at the coarsest level
};

/// One verification run, as declared by a scenario file. Flat scenarios carry
/// a Domain; atlas scenarios additionally carry charts and a partition of
/// unity, with the form written in ambient coordinates.
struct Scenario {
    std::string name;
    int n = 0;
    Domain domain;
    FormSum form;
    GridSpec grid;
    double tolerance = 1e-3;
    std::uint64_t seed = 1;
    std::optional<MollifyConfig> mollify;
    std::optional<Atlas> atlas;
};

/// Parses the documented JSON schema. Throws config_error with a message
/// naming the offending element.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

struct RunOptions {
    int cells_override = 0;   // replaces the coarsest-level cell count
    int levels_override = 0;  // replaces grid.refinement_levels
    bool flip_orientation = false;
};

/// Runs the refinement ladder (and the mollification rows when a schedule is
/// present) and fills a StokesReport. Does not decide pass/fail; callers
/// compare relative_residual against scenario.tolerance.
StokesReport run_scenario(const Scenario& sc, const RunOptions& opts = {});

}  // namespace lipform
