#pragma once

#include <string>
#include <vector>

#include "lipform/scenario.hpp"

namespace lipform {

struct CatalogEntry {
    std::string name;
    std::string json_text;
};

/// Built-in scenario corpus: flat half-space runs on n = 1..3 mixing smooth
/// and kinked fields, full-space exact-form runs, and the atlas runs.
const std::vector<CatalogEntry>& catalog_scenarios();

/// Parses one built-in scenario by name; throws config_error if unknown.
Scenario catalog_scenario(const std::string& name);

/// A member field of the scenario corpus with its support box K and a
/// declared Lipschitz bound, shared by the mollification checks.
struct CatalogField {
    std::string name;
    ScalarField field;
    Box box;
};

std::vector<CatalogField> catalog_fields();

}  // namespace lipform
