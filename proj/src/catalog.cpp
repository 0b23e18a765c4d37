#include "lipform/catalog.hpp"

#include <cmath>

#include "lipform/errors.hpp"
#include "lipform/parse.hpp"

namespace lipform {

const std::vector<CatalogEntry>& catalog_scenarios()
{
    static const std::vector<CatalogEntry> entries = {
        {"h1-bump-smooth", R"json({
  "schema_version": 1,
  "name": "h1-bump-smooth",
  "n": 1,
  "domain": {"kind": "half_space", "box": [[0, 2]]},
  "form": [{"coefficient": "bump(x1, 0, 2)", "factors": []}],
  "grid": {"cells": 32, "rule": "midpoint", "levels": 4},
  "tolerance": 0.001
})json"},
        {"h1-relu-kinked", R"json({
  "schema_version": 1,
  "name": "h1-relu-kinked",
  "n": 1,
  "domain": {"kind": "half_space", "box": [[0, 2]]},
  "form": [{"coefficient": "max(0, 1 - x1)", "factors": []}],
  "grid": {"cells": 32, "rule": "midpoint", "levels": 4},
  "tolerance": 0.001
})json"},
        {"h2-bump-smooth", R"json({
  "schema_version": 1,
  "name": "h2-bump-smooth",
  "n": 2,
  "domain": {"kind": "half_space", "box": [[-1.5, 1.5], [0, 1.5]]},
  "form": [{"coefficient": "bump(x1, 0, 1.5) * bump(x2, 0, 1.5)",
            "factors": ["x1 + 0.5*x2"]}],
  "grid": {"cells": 8, "rule": "gauss", "gauss_order": 6, "levels": 4},
  "tolerance": 0.001
})json"},
        {"h2-anchor-kinked", R"json({
  "schema_version": 1,
  "name": "h2-anchor-kinked",
  "n": 2,
  "domain": {"kind": "half_space", "box": [[-2, 2], [0, 2]]},
  "form": [{"coefficient": "bump(x1, 0, 1) * max(0, 1 - x2)", "factors": ["x1"]}],
  "grid": {"cells": 32, "rule": "midpoint", "levels": 4},
  "tolerance": 0.001
})json"},
        {"h2-kinked-factor", R"json({
  "schema_version": 1,
  "name": "h2-kinked-factor",
  "n": 2,
  "domain": {"kind": "half_space", "box": [[-2, 2], [0, 2]]},
  "form": [{"coefficient": "bump(x1, 0, 1) * bump(x2, 0, 1)",
            "factors": ["x1 + 0.3*abs(x1)"]}],
  "grid": {"cells": 32, "rule": "midpoint", "levels": 4},
  "tolerance": 0.001,
  "mollify": {"eps0": 0.5, "ratio": 0.5, "count": 8, "cells": 64}
})json"},
        {"h3-bump-smooth", R"json({
  "schema_version": 1,
  "name": "h3-bump-smooth",
  "n": 3,
  "domain": {"kind": "half_space", "box": [[-1.5, 1.5], [-1.5, 1.5], [0, 1.5]]},
  "form": [{"coefficient": "bump(x1, 0, 1.5) * bump(x2, 0, 1.5) * bump(x3, 0, 1.5)",
            "factors": ["x1", "x2"]}],
  "grid": {"cells": 8, "rule": "midpoint", "levels": 4},
  "tolerance": 0.001
})json"},
        {"h3-kinked", R"json({
  "schema_version": 1,
  "name": "h3-kinked",
  "n": 3,
  "domain": {"kind": "half_space", "box": [[-1.5, 1.5], [-1.5, 1.5], [0, 2]]},
  "form": [{"coefficient": "bump(x1, 0, 1.5) * bump(x2, 0, 1.5) * max(0, 1 - x3)",
            "factors": ["x1", "x2"]}],
  "grid": {"cells": 8, "rule": "midpoint", "levels": 4},
  "tolerance": 0.001
})json"},
        {"r1-exact-smooth", R"json({
  "schema_version": 1,
  "name": "r1-exact-smooth",
  "n": 1,
  "domain": {"kind": "full_space", "box": [[-1.5, 1.5]]},
  "form": [{"coefficient": "bump(x1, 0, 1.5)", "factors": []}],
  "grid": {"cells": 32, "rule": "midpoint", "levels": 3},
  "tolerance": 0.001
})json"},
        {"r2-exact-kinked", R"json({
  "schema_version": 1,
  "name": "r2-exact-kinked",
  "n": 2,
  "domain": {"kind": "full_space", "box": [[-1.5, 1.5], [-1.5, 1.5]]},
  "form": [{"coefficient": "bump(x1, 0, 1.5) * bump(x2, 0, 1.5)",
            "factors": ["x2 + 0.5*abs(x2)"]}],
  "grid": {"cells": 16, "rule": "midpoint", "levels": 3},
  "tolerance": 0.001
})json"},
        {"r3-exact-smooth", R"json({
  "schema_version": 1,
  "name": "r3-exact-smooth",
  "n": 3,
  "domain": {"kind": "full_space", "box": [[-1.5, 1.5], [-1.5, 1.5], [-1.5, 1.5]]},
  "form": [{"coefficient": "bump(x1, 0, 1.5) * bump(x2, 0, 1.5) * bump(x3, 0, 1.5)",
            "factors": ["x2", "x3"]}],
  "grid": {"cells": 8, "rule": "midpoint", "levels": 3},
  "tolerance": 0.001
})json"},
        {"disk-atlas", R"json({
  "schema_version": 1,
  "name": "disk-atlas",
  "n": 2,
  "domain": {"kind": "full_space", "box": [[-1, 1], [-1, 1]]},
  "form": [{"coefficient": "x1", "factors": ["x2"]}],
  "grid": {"cells": 24, "rule": "midpoint", "levels": 3},
  "tolerance": 0.01,
  "atlas": {
    "region": "1 - x1^2 - x2^2",
    "sample_box": [[-1, 1], [-1, 1]],
    "charts": [
      {"label": "core",
       "forward": ["x1", "x2"],
       "inverse": ["x1", "x2"],
       "target": {"kind": "full_space", "box": [[-0.9, 0.9], [-0.9, 0.9]]}},
      {"label": "collar",
       "forward": ["atan2(x2, x1)", "1 - sqrt(x1^2 + x2^2)"],
       "inverse": ["(1 - x2)*cos(x1)", "(1 - x2)*sin(x1)"],
       "target": {"kind": "half_space",
                  "box": [[-3.141592653589793, 3.141592653589793], [0, 0.45]],
                  "periodic_axes": [1]}}
    ],
    "bumps": [
      "min(max((0.7225 - x1^2 - x2^2)/0.3625, 0), 1)^2 * (3 - 2*min(max((0.7225 - x1^2 - x2^2)/0.3625, 0), 1))",
      "1 - min(max((0.7225 - x1^2 - x2^2)/0.3625, 0), 1)^2 * (3 - 2*min(max((0.7225 - x1^2 - x2^2)/0.3625, 0), 1))"
    ]
  }
})json"},
        {"h2-identity-atlas", R"json({
  "schema_version": 1,
  "name": "h2-identity-atlas",
  "n": 2,
  "domain": {"kind": "half_space", "box": [[-2, 2], [0, 2]]},
  "form": [{"coefficient": "bump(x1, 0, 1) * max(0, 1 - x2)", "factors": ["x1"]}],
  "grid": {"cells": 32, "rule": "midpoint", "levels": 4},
  "tolerance": 0.001,
  "atlas": {
    "region": "1",
    "sample_box": [[-2, 2], [0, 2]],
    "charts": [
      {"label": "identity",
       "forward": ["x1", "x2"],
       "inverse": ["x1", "x2"],
       "target": {"kind": "half_space", "box": [[-2, 2], [0, 2]]}}
    ],
    "bumps": ["1"]
  }
})json"},
    };
    return entries;
}

Scenario catalog_scenario(const std::string& name)
{
    for (const auto& e : catalog_scenarios())
        if (e.name == name) return parse_scenario(nlohmann::json::parse(e.json_text));
    throw config_error("unknown built-in scenario '" + name + "'");
}

std::vector<CatalogField> catalog_fields()
{
    auto box1 = [](double lo, double hi) { return Box{{lo}, {hi}}; };
    auto field = [](const std::string& expr, int n, double lip) {
        return parse_expression(expr, n).with_lip_bound(lip);
    };
    const double kb = kBumpSlopeMax;
    std::vector<CatalogField> out;
    out.push_back({"abs-1d", field("abs(x1)", 1, 1.0), box1(-1, 1)});
    out.push_back({"relu-1d", field("max(0, 1 - x1)", 1, 1.0), box1(0, 2)});
    out.push_back({"quad-1d", field("0.5*x1^2", 1, 1.25), box1(-1, 1)});
    out.push_back({"bump-1d", field("bump(x1, 0, 1)", 1, kb), box1(-1, 1)});
    out.push_back({"kink-sum-1d", field("x1 + 0.3*abs(x1)", 1, 1.3), box1(-1, 1)});
    out.push_back({"max-2d", field("max(x1, x2)", 2, 1.0), Box{{-1, -1}, {1, 1}}});
    out.push_back({"min-2d", field("min(x1, x2)", 2, 1.0), Box{{-1, -1}, {1, 1}}});
    out.push_back(
        {"bump-2d", field("bump(x1, 0, 1)*bump(x2, 0, 1)", 2, std::sqrt(2.0) * kb),
         Box{{-1, -1}, {1, 1}}});
    out.push_back({"anchor-2d",
                   field("bump(x1, 0, 1) * max(0, 1 - x2)", 2, std::hypot(1.25 * kb, 1.0)),
                   Box{{-1, 0}, {1, 2}}});
    return out;
}

}  // namespace lipform
