#include "lipform/scenario.hpp"

#include <cmath>
#include <fstream>

#include "lipform/errors.hpp"
#include "lipform/parse.hpp"

namespace lipform {

namespace {

using nlohmann::json;

const json& member(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        throw config_error(where + ": missing required field '" + key + "'");
    return j.at(key);
}

double number_of(const json& j, const std::string& where)
{
    if (!j.is_number()) throw config_error(where + ": expected a number");
    return j.get<double>();
}

int int_of(const json& j, const std::string& where)
{
    if (!j.is_number_integer()) throw config_error(where + ": expected an integer");
    return j.get<int>();
}

std::string string_of(const json& j, const std::string& where)
{
    if (!j.is_string()) throw config_error(where + ": expected a string");
    return j.get<std::string>();
}

Box parse_box(const json& j, int n, const std::string& where)
{
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw config_error(where + ": expected an array of " + std::to_string(n) +
                           " [lo, hi] pairs");
    Box box;
    for (const auto& side : j) {
        if (!side.is_array() || side.size() != 2)
            throw config_error(where + ": each axis needs exactly [lo, hi]");
        box.lo.push_back(number_of(side[0], where));
        box.hi.push_back(number_of(side[1], where));
    }
    box.validate();
    return box;
}

Domain parse_domain(const json& j, int n, const std::string& where)
{
    Domain dom;
    const std::string kind = string_of(member(j, "kind", where), where + ".kind");
    if (kind == "full_space")
        dom.kind = DomainKind::FullSpace;
    else if (kind == "half_space")
        dom.kind = DomainKind::HalfSpace;
    else
        throw config_error(where + ".kind: expected 'full_space' or 'half_space'");
    dom.support_box = parse_box(member(j, "box", where), n, where + ".box");
    if (j.contains("periodic_axes")) {
        for (const auto& a : j.at("periodic_axes")) {
            const int axis = int_of(a, where + ".periodic_axes");
            if (axis < 1 || axis > n)
                throw config_error(where + ".periodic_axes: axis " + std::to_string(axis) +
                                   " out of range 1.." + std::to_string(n));
            dom.periodic_axes.push_back(axis - 1);
        }
    }
    dom.validate();
    return dom;
}

FormSum parse_form(const json& j, int n, const std::string& where)
{
    if (!j.is_array()) throw config_error(where + ": expected an array of terms");
    std::vector<SimpleForm> terms;
    int degree = -1;
    for (size_t t = 0; t < j.size(); ++t) {
        const std::string here = where + "[" + std::to_string(t) + "]";
        SimpleForm term;
        term.ambient = n;
        term.coefficient =
            parse_expression(string_of(member(j[t], "coefficient", here), here), n);
        const json& factors = member(j[t], "factors", here);
        if (!factors.is_array()) throw config_error(here + ".factors: expected an array");
        for (const auto& g : factors)
            term.factors.push_back(parse_expression(string_of(g, here + ".factors"), n));
        term.validate();
        if (degree < 0) degree = term.degree();
        if (term.degree() != degree)
            throw config_error(where + ": terms of mixed degree");
        terms.push_back(std::move(term));
    }
    if (terms.empty()) throw config_error(where + ": at least one term required");
    FormSum sum = FormSum::zero(n, degree);
    sum.terms = std::move(terms);
    sum.validate();
    return sum;
}

GridSpec parse_grid(const json& j, const std::string& where)
{
    GridSpec grid;
    if (j.contains("cells")) grid.cells_per_axis = int_of(j.at("cells"), where + ".cells");
    if (j.contains("rule")) {
        const std::string rule = string_of(j.at("rule"), where + ".rule");
        if (rule == "midpoint")
            grid.rule = QuadRule::Midpoint;
        else if (rule == "gauss")
            grid.rule = QuadRule::Gauss;
        else
            throw config_error(where + ".rule: expected 'midpoint' or 'gauss'");
    }
    if (j.contains("gauss_order"))
        grid.gauss_order = int_of(j.at("gauss_order"), where + ".gauss_order");
    if (j.contains("levels"))
        grid.refinement_levels = int_of(j.at("levels"), where + ".levels");
    if (j.contains("shift")) grid.shift = number_of(j.at("shift"), where + ".shift");
    try {
        grid.validate();
    } catch (const usage_error& e) {
        throw config_error(where + ": " + e.what());
    }
    return grid;
}

Chart parse_chart(const json& j, int n, const std::string& where)
{
    Chart chart;
    chart.label = string_of(member(j, "label", where), where + ".label");
    auto parse_map = [&](const char* key) {
        const json& comps = member(j, key, where);
        if (!comps.is_array() || static_cast<int>(comps.size()) != n)
            throw config_error(where + "." + key + ": expected " + std::to_string(n) +
                               " component expressions");
        std::vector<ScalarField> out;
        for (const auto& c : comps)
            out.push_back(parse_expression(string_of(c, where + "." + key), n));
        return out;
    };
    chart.forward = parse_map("forward");
    chart.inverse = parse_map("inverse");
    chart.target = parse_domain(member(j, "target", where), n, where + ".target");
    chart.validate();
    return chart;
}

Atlas parse_atlas(const json& j, int n, const std::string& where)
{
    Atlas atlas;
    const json& charts = member(j, "charts", where);
    if (!charts.is_array() || charts.empty())
        throw config_error(where + ".charts: expected a nonempty array");
    for (size_t c = 0; c < charts.size(); ++c)
        atlas.charts.push_back(parse_chart(charts[c], n, where + ".charts[" + std::to_string(c) + "]"));
    const json& bumps = member(j, "bumps", where);
    if (!bumps.is_array() || bumps.size() != charts.size())
        throw config_error(where + ".bumps: expected one expression per chart");
    for (const auto& b : bumps)
        atlas.bumps.push_back(parse_expression(string_of(b, where + ".bumps"), n));
    atlas.region = parse_expression(string_of(member(j, "region", where), where + ".region"), n);
    atlas.sample_box = parse_box(member(j, "sample_box", where), n, where + ".sample_box");
    atlas.validate();
    return atlas;
}

}  // namespace

Scenario parse_scenario(const json& j)
{
    if (!j.is_object()) throw config_error("scenario: expected a JSON object");
    const int version = int_of(member(j, "schema_version", "scenario"), "scenario.schema_version");
    if (version != kSchemaVersion)
        throw config_error("scenario.schema_version: expected " + std::to_string(kSchemaVersion) +
                           ", got " + std::to_string(version));
    Scenario sc;
    sc.name = string_of(member(j, "name", "scenario"), "scenario.name");
    sc.n = int_of(member(j, "n", "scenario"), "scenario.n");
    if (sc.n < 1 || sc.n > 4) throw config_error("scenario.n: expected 1..4");
    sc.domain = parse_domain(member(j, "domain", "scenario"), sc.n, "scenario.domain");
    sc.form = parse_form(member(j, "form", "scenario"), sc.n, "scenario.form");
    if (sc.form.degree != sc.n - 1)
        throw config_error("scenario.form: degree must be n - 1 for a Stokes run");
    if (j.contains("grid")) sc.grid = parse_grid(j.at("grid"), "scenario.grid");
    if (j.contains("tolerance")) {
        sc.tolerance = number_of(j.at("tolerance"), "scenario.tolerance");
        if (!(sc.tolerance > 0.0)) throw config_error("scenario.tolerance: must be positive");
    }
    if (j.contains("seed")) sc.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("mollify")) {
        const json& m = j.at("mollify");
        MollifyConfig cfg;
        cfg.schedule.eps0 = number_of(member(m, "eps0", "scenario.mollify"), "scenario.mollify.eps0");
        cfg.schedule.ratio = number_of(member(m, "ratio", "scenario.mollify"), "scenario.mollify.ratio");
        cfg.schedule.count = int_of(member(m, "count", "scenario.mollify"), "scenario.mollify.count");
        if (m.contains("cells")) cfg.cells = int_of(m.at("cells"), "scenario.mollify.cells");
        try {
            cfg.schedule.validate();
        } catch (const usage_error& e) {
            throw config_error(std::string("scenario.mollify: ") + e.what());
        }
        sc.mollify = cfg;
    }
    if (j.contains("atlas")) {
        sc.atlas = parse_atlas(j.at("atlas"), sc.n, "scenario.atlas");
        if (sc.mollify)
            throw config_error("scenario: mollification schedules apply to flat scenarios only");
    }
    return sc;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw config_error("cannot open scenario file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw config_error("scenario file '" + path + "': " + e.what());
    }
    return parse_scenario(j);
}

StokesReport run_scenario(const Scenario& sc, const RunOptions& opts)
{
    StokesReport report;
    report.scenario = sc.name;
    const int base = opts.cells_override > 0 ? opts.cells_override : sc.grid.cells_per_axis;
    const int levels = opts.levels_override > 0 ? opts.levels_override : sc.grid.refinement_levels;
    if (base < 2) throw config_error("scenario: cells must be >= 2");
    if (levels < 1) throw config_error("scenario: levels must be >= 1");

    if (sc.atlas) {
        for (const auto& c : sc.atlas->charts) check_chart(c, sc.seed);
        check_partition(*sc.atlas, sc.seed);
        int m = base;
        for (int level = 0; level < levels; ++level, m *= 2) {
            ManifoldRunOptions mopts;
            mopts.cells_override = m;
            mopts.flip_orientation = opts.flip_orientation;
            const ManifoldIntegrals v = stokes_manifold_integrals(*sc.atlas, sc.form, sc.grid, mopts);
            report.levels.push_back({level, m, v.boundary, v.interior, v.boundary - v.interior});
        }
    } else {
        const FormSum d = exterior_derivative(sc.form);
        int m = base;
        for (int level = 0; level < levels; ++level, m *= 2) {
            const double boundary =
                integrate_boundary(sc.form, sc.domain, sc.grid, m, opts.flip_orientation);
            const double interior = integrate_interior(d, sc.domain, sc.grid, m);
            report.levels.push_back({level, m, boundary, interior, boundary - interior});
        }
        if (sc.mollify) {
            const int mcells = sc.mollify->cells > 0 ? sc.mollify->cells : base;
            std::optional<int> reflect;
            if (sc.domain.kind == DomainKind::HalfSpace) reflect = sc.n - 1;
            for (int s = 0; s < sc.mollify->schedule.count; ++s) {
                const double eps = sc.mollify->schedule.eps(s);
                const FormSum smoothed = mollify_form(sc.form, eps, reflect);
                const double boundary = integrate_boundary(smoothed, sc.domain, sc.grid, mcells,
                                                           opts.flip_orientation);
                const double interior =
                    integrate_interior(exterior_derivative(smoothed), sc.domain, sc.grid, mcells);
                report.mollification.push_back({eps, boundary, interior});
            }
        }
    }

    const LevelRow& finest = report.levels.back();
    report.boundary_integral = finest.boundary;
    report.interior_integral = finest.interior;
    report.residual = finest.residual;
    report.relative_residual = std::abs(finest.residual) / (1.0 + std::abs(finest.interior));
    return report;
}

}  // namespace lipform
