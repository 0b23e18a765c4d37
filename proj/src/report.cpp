#include "lipform/report.hpp"

#include <iomanip>
#include <ostream>

namespace lipform {

nlohmann::json StokesReport::to_json() const
{
    nlohmann::json j;
    j["scenario"] = scenario;
    j["boundary_integral"] = boundary_integral;
    j["interior_integral"] = interior_integral;
    j["residual"] = residual;
    j["relative_residual"] = relative_residual;
    j["levels"] = nlohmann::json::array();
    for (const auto& row : levels)
        j["levels"].push_back({{"level", row.level},
                               {"m", row.cells},
                               {"boundary_integral", row.boundary},
                               {"interior_integral", row.interior},
                               {"residual", row.residual}});
    j["mollification"] = nlohmann::json::array();
    for (const auto& row : mollification)
        j["mollification"].push_back(
            {{"eps", row.eps}, {"boundary_integral", row.boundary}, {"interior_integral", row.interior}});
    return j;
}

void StokesReport::write_csv(std::ostream& os) const
{
    os << "level,m,boundary_integral,interior_integral,residual\n";
    os << std::setprecision(17);
    for (const auto& row : levels)
        os << row.level << ',' << row.cells << ',' << row.boundary << ',' << row.interior << ','
           << row.residual << '\n';
}

}  // namespace lipform
