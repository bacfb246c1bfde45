// vrsim: run one scenario and write its CSV/JSON outputs.
//
//   vrsim <scenario> [--config FILE] [--out DIR] [--set key=value ...]
//
// Exit codes: 0 all checks passed, 2 some check failed, 1 error.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "vrsim/errors.hpp"
#include "vrsim/scenarios.hpp"

namespace sc = vrsim::scenarios;

int main(int argc, char** argv) {
    CLI::App app{"Vacuum-Rabi / dynamical-Casimir scenario runner"};
    std::string scenario_name;
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    bool print_config = false;

    std::string names;
    for (const auto s : sc::all_scenarios()) names += std::string(names.empty() ? "" : ", ") +
                                                      std::string(sc::to_string(s));
    app.add_option("scenario", scenario_name, "one of: " + names)->required();
    app.add_option("--config", config_path, "JSON config merged over the defaults")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output root (default $VRSIM_OUT or ./out)");
    app.add_option("--set", overrides, "dotted override, e.g. model.kappa=0.06");
    app.add_flag("--print-config", print_config, "print the resolved config and exit");
    CLI11_PARSE(app, argc, argv);

    try {
        const sc::Scenario scenario = sc::parse_scenario(scenario_name);
        vrsim::io::json cfg = sc::config_to_json(sc::default_config(scenario));
        if (const char* env = std::getenv("VRSIM_OUT"); env && *env) cfg["output_dir"] = env;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            vrsim::io::json patch;
            try {
                patch = vrsim::io::json::parse(in);
            } catch (const vrsim::io::json::exception& e) {
                throw vrsim::ConfigError(config_path + ": " + e.what());
            }
            if (patch.contains("scenario") && patch["scenario"] != cfg["scenario"]) {
                throw vrsim::ConfigError(config_path + " is for scenario " +
                                         patch["scenario"].dump());
            }
            cfg.merge_patch(patch);
        }
        for (const auto& o : overrides) sc::apply_override(cfg, o);
        if (!out_dir.empty()) cfg["output_dir"] = out_dir;

        const sc::ScenarioConfig config = sc::config_from_json(cfg);
        if (print_config) {
            std::cout << sc::config_to_json(config).dump(2) << "\n";
            return 0;
        }
        const sc::ScenarioReport report = sc::run_scenario(config);
        for (const auto& c : report.checks) {
            std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " = " << c.value << " ("
                      << c.criterion << ")\n";
        }
        std::cout << "wrote " << report.directory.string() << "\n";
        return report.passed() ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "vrsim: " << e.what() << "\n";
        return 1;
    }
}
