// scenarios.hpp: config-driven reference runs and the truncation audit

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vrsim/dynamics.hpp"
#include "vrsim/io.hpp"
#include "vrsim/spectra.hpp"

namespace vrsim::scenarios {

enum class Scenario {
    levels_two_photon,
    splitting_vs_coupling,
    dynamics_two_photon,
    driven_dynamics,
    levels_one_photon,
    dynamics_one_photon,
    converge,
};

const std::array<Scenario, 7>& all_scenarios();
std::string_view to_string(Scenario s);
Scenario parse_scenario(std::string_view name);  // throws ConfigError

// One master-equation run inside a dynamics scenario.
struct DynamicsCase {
    std::string name;
    LindbladConfig lindblad;
    std::optional<double> drive_amplitude;  // overrides drive.amplitude
};

struct ScenarioConfig {
    Scenario scenario{Scenario::levels_two_photon};
    ModelParams model;
    int n_photon_max{10};
    int n_phonon_max{6};
    LindbladConfig lindblad;
    std::optional<DriveParams> drive;
    std::optional<spectra::Grid> sweep;  // omega_q for level scans, lambda = kappa for coupling scans
    std::optional<spectra::Bracket> bracket;
    std::filesystem::path output_dir{"out"};

    int n_levels{8};
    // Dynamics: re-locate omega_q at the anticrossing (and the pulse width /
    // centre) from the final model parameters before integrating.
    bool auto_resonance{true};
    double energy_cutoff{8.0};          // kept eigenstates above the ground energy
    double duration_omega_eff_t{12.566370614359172};  // 4 pi
    int samples{801};
    std::vector<DynamicsCase> cases;     // empty: a single case using `lindblad`
    int converge_step{2};

    HilbertSpace space() const { return {n_photon_max, n_phonon_max}; }
    void validate() const;  // throws ConfigError
};

ScenarioConfig default_config(Scenario s);

io::json config_to_json(const ScenarioConfig& c);
ScenarioConfig config_from_json(const io::json& j);

// key=value with a dotted key ("model.kappa=0.06"); the value is parsed as
// JSON when possible and kept as a string otherwise.
void apply_override(io::json& j, std::string_view assignment);

struct Check {
    std::string name;
    bool passed{false};
    double value{0.0};
    std::string criterion;
};

struct ScenarioReport {
    Scenario scenario{Scenario::levels_two_photon};
    std::filesystem::path directory;
    std::vector<std::filesystem::path> files;
    std::vector<Check> checks;
    io::json summary;

    bool passed() const;
};

// Writes <output_dir>/<scenario>/*.csv plus summary.json.
ScenarioReport run_scenario(const ScenarioConfig& config);

} // namespace vrsim::scenarios
