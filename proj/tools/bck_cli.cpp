// Command-line driver: scenario simulation, verification presets, parameter
// sweeps and catalog export.
//
//   simulate --config scenario.json [--out DIR] [--format csv|json] [--seed N]
//   verify   --preset paper-suite | --config scenario.json  [--out DIR] ...
//   sweep    --config sweep.json [--jobs N] [--out DIR] [--seed N]
//   catalog  [--config scenario.json] [--out DIR]
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error,
// 3 runtime (integration) failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bck/scenario.hpp"

namespace {

bck::json load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw bck::SchemaError("cannot open config file: " + path);
    try {
        return bck::json::parse(is);
    } catch (const std::exception& e) {
        throw bck::SchemaError("config is not valid JSON: " +
                               std::string(e.what()));
    }
}

void emit_summary(const bck::json& summary, const std::string& out_dir) {
    std::cout << summary.dump(2) << std::endl;
    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        const std::string name =
            summary.contains("scenario") && summary["scenario"].is_string()
                ? summary["scenario"].get<std::string>()
                : "summary";
        std::ofstream os(fs::path(out_dir) /
                         (bck::scenario_detail::sanitize(name) +
                          "_summary.json"));
        os << summary.dump(2) << '\n';
    }
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool has_seed = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_format) {
    cmd->add_option("--config", o.config_path, "Path to the JSON config");
    cmd->add_option("--out", o.out_dir, "Directory for emitted artifacts");
    if (with_format)
        cmd->add_option("--format", o.format,
                        "Trajectory file format (csv|json)")
            ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", o.seed, "Override the config RNG seed")
        ->each([&o](const std::string&) { o.has_seed = true; });
}

int apply_seed_override(bck::json& config, const CommonOpts& o) {
    if (o.has_seed) config["seed"] = o.seed;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Numerical laboratory for the damped-particle symmetry catalog"};
    app.require_subcommand(1);

    CommonOpts sim_o, ver_o, swp_o, cat_o;
    std::string preset;
    unsigned jobs = 1;

    CLI::App* sim = app.add_subcommand(
        "simulate", "Integrate a scenario, write trajectories and checks");
    add_common(sim, sim_o, true);

    CLI::App* ver = app.add_subcommand(
        "verify", "Run scenario checks or a verification preset");
    add_common(ver, ver_o, false);
    ver->add_option("--preset", preset,
                    "Named preset (\"paper-suite\" = the full suite)");

    CLI::App* swp = app.add_subcommand(
        "sweep", "Expand a parameter grid over a base scenario");
    add_common(swp, swp_o, false);
    swp->add_option("--jobs", jobs, "Concurrent scenario jobs")
        ->check(CLI::PositiveNumber);

    CLI::App* cat = app.add_subcommand(
        "catalog", "Export the symmetry/integral catalog as JSON");
    add_common(cat, cat_o, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            if (sim_o.config_path.empty()) {
                std::cerr << "simulate: --config is required\n";
                return 2;
            }
            bck::json config = load_config(sim_o.config_path);
            apply_seed_override(config, sim_o);
            bck::RunOptions opt;
            opt.out_dir = sim_o.out_dir;
            opt.format = sim_o.format;
            opt.write_trajectories = true;
            const bck::RunResult r = bck::run_scenario_json(config, opt);
            emit_summary(r.summary, sim_o.out_dir);
            return r.exit_code;
        }

        if (ver->parsed()) {
            if (!preset.empty()) {
                if (preset != "paper-suite") {
                    std::cerr << "verify: unknown preset \"" << preset
                              << "\"\n";
                    return 2;
                }
                const std::uint64_t seed = ver_o.has_seed ? ver_o.seed : 42;
                const bck::RunResult r = bck::run_paper_suite(seed);
                emit_summary(r.summary, ver_o.out_dir);
                return r.exit_code;
            }
            if (ver_o.config_path.empty()) {
                std::cerr << "verify: --config or --preset is required\n";
                return 2;
            }
            bck::json config = load_config(ver_o.config_path);
            apply_seed_override(config, ver_o);
            bck::RunOptions opt;
            opt.out_dir = ver_o.out_dir;
            opt.write_trajectories = false;  // checks only
            const bck::RunResult r = bck::run_scenario_json(config, opt);
            emit_summary(r.summary, ver_o.out_dir);
            return r.exit_code;
        }

        if (swp->parsed()) {
            if (swp_o.config_path.empty()) {
                std::cerr << "sweep: --config is required\n";
                return 2;
            }
            bck::json config = load_config(swp_o.config_path);
            if (swp_o.has_seed && config.is_object() &&
                config.contains("base"))
                config["base"]["seed"] = swp_o.seed;
            bck::RunOptions opt;
            opt.out_dir = swp_o.out_dir;
            const bck::RunResult r =
                bck::run_sweep_json(config, opt, jobs);
            emit_summary(r.summary, swp_o.out_dir);
            return r.exit_code;
        }

        if (cat->parsed()) {
            bck::Potential pot = bck::Potential::linear(1.0);
            double gamma = 0.5;
            if (!cat_o.config_path.empty()) {
                const bck::json config = load_config(cat_o.config_path);
                if (!config.is_object() || !config.contains("potential"))
                    throw bck::SchemaError(
                        "catalog: config needs a \"potential\" object");
                pot = bck::parse_potential(config["potential"]);
                if (config.contains("gamma") &&
                    config["gamma"].is_number())
                    gamma = config["gamma"].get<double>();
            }
            const bck::json j =
                bck::catalog_json(pot, bck::Params{gamma});
            std::cout << j.dump(2) << std::endl;
            if (!cat_o.out_dir.empty()) {
                namespace fs = std::filesystem;
                fs::create_directories(cat_o.out_dir);
                std::ofstream os(fs::path(cat_o.out_dir) / "catalog.json");
                os << j.dump(2) << '\n';
            }
            return 0;
        }
    } catch (const bck::SchemaError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const bck::DomainError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const bck::Error& e) {
        std::cerr << "runtime failure: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
