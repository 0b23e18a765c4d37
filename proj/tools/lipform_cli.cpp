#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lipform/catalog.hpp"
#include "lipform/errors.hpp"
#include "lipform/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSupportLeak = 3;

void print_report(const lipform::StokesReport& report, double tolerance)
{
    std::printf("scenario: %s\n", report.scenario.c_str());
    std::printf("%5s %6s %22s %22s %14s\n", "level", "m", "boundary", "interior", "residual");
    for (const auto& row : report.levels)
        std::printf("%5d %6d %22.15e %22.15e %14.6e\n", row.level, row.cells, row.boundary,
                    row.interior, row.residual);
    if (!report.mollification.empty()) {
        std::printf("mollification:\n%12s %22s %22s\n", "eps", "boundary", "interior");
        for (const auto& row : report.mollification)
            std::printf("%12.6e %22.15e %22.15e\n", row.eps, row.boundary, row.interior);
    }
    std::printf("relative_residual %.6e (tolerance %.3e)\n", report.relative_residual, tolerance);
}

lipform::Scenario resolve_scenario(const std::string& ref)
{
    if (std::filesystem::exists(ref)) return lipform::load_scenario(ref);
    return lipform::catalog_scenario(ref);
}

int cmd_verify(const std::string& ref, int levels, int cells, std::uint64_t seed, bool has_seed,
               const std::string& csv_path, const std::string& json_path, bool flip)
{
    lipform::Scenario sc = resolve_scenario(ref);
    if (has_seed) sc.seed = seed;
    lipform::RunOptions opts;
    opts.levels_override = levels;
    opts.cells_override = cells;
    opts.flip_orientation = flip;
    const lipform::StokesReport report = run_scenario(sc, opts);
    print_report(report, sc.tolerance);
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw lipform::config_error("cannot write CSV file '" + csv_path + "'");
        report.write_csv(csv);
    }
    if (!json_path.empty()) {
        std::ofstream js(json_path);
        if (!js) throw lipform::config_error("cannot write JSON file '" + json_path + "'");
        js << report.to_json().dump(2) << '\n';
    }
    if (report.relative_residual > sc.tolerance) {
        std::printf("FAIL: relative residual above tolerance\n");
        return kExitTolerance;
    }
    std::printf("PASS\n");
    return kExitOk;
}

int cmd_suite(const std::string& filter, bool flip)
{
    int failures = 0;
    std::printf("%-20s %16s %16s %14s %9s  %s\n", "scenario", "boundary", "interior",
                "rel_residual", "tol", "status");
    for (const auto& entry : lipform::catalog_scenarios()) {
        if (!filter.empty() && entry.name.find(filter) == std::string::npos) continue;
        const lipform::Scenario sc =
            lipform::parse_scenario(nlohmann::json::parse(entry.json_text));
        lipform::RunOptions opts;
        opts.flip_orientation = flip;
        const lipform::StokesReport report = run_scenario(sc, opts);
        const bool ok = report.relative_residual <= sc.tolerance;
        if (!ok) ++failures;
        std::printf("%-20s %16.9e %16.9e %14.6e %9.1e  %s\n", entry.name.c_str(),
                    report.boundary_integral, report.interior_integral, report.relative_residual,
                    sc.tolerance, ok ? "pass" : "FAIL");
    }
    if (failures > 0) {
        std::printf("%d scenario(s) failed\n", failures);
        return kExitTolerance;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Stokes identity verifier for Lipschitz differential forms"};
    app.require_subcommand(1);

    std::string ref, csv_path, json_path, filter;
    int levels = 0, cells = 0;
    std::uint64_t seed = 0;
    bool flip = false;

    CLI::App* verify = app.add_subcommand("verify", "run one scenario file or built-in name");
    verify->add_option("scenario", ref, "scenario file path or built-in name")->required();
    verify->add_option("--levels", levels, "override refinement level count");
    verify->add_option("--cells", cells, "override coarsest cells per axis");
    CLI::Option* seed_opt = verify->add_option("--seed", seed, "override the scenario seed");
    verify->add_option("--csv", csv_path, "write the refinement table as CSV");
    verify->add_option("--json", json_path, "write the full report as JSON");
    verify->add_flag("--flip-orientation", flip, "negate the boundary orientation (debug)")
        ->group("");

    CLI::App* suite = app.add_subcommand("suite", "run the built-in scenario catalog");
    suite->add_option("--filter", filter, "only run scenarios whose name contains this");
    suite->add_flag("--flip-orientation", flip, "negate the boundary orientation (debug)")
        ->group("");

    CLI::App* list = app.add_subcommand("list", "list built-in scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (list->parsed()) {
            for (const auto& entry : lipform::catalog_scenarios())
                std::printf("%s\n", entry.name.c_str());
            return kExitOk;
        }
        if (verify->parsed())
            return cmd_verify(ref, levels, cells, seed, seed_opt->count() > 0, csv_path,
                              json_path, flip);
        return cmd_suite(filter, flip);
    } catch (const lipform::support_leak_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSupportLeak;
    } catch (const lipform::config_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const lipform::usage_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
}
