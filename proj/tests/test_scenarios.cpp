#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"

#include "vrsim/errors.hpp"
#include "vrsim/scenarios.hpp"

using namespace vrsim;
namespace sc = vrsim::scenarios;
namespace fsys = std::filesystem;

namespace {

fsys::path fresh_dir(const std::string& name) {
    const fsys::path dir = fsys::temp_directory_path() / "vrsim_test_scenarios" / name;
    fsys::remove_all(dir);
    return dir;
}

std::string slurp(const fsys::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

sc::ScenarioConfig quick_levels(const fsys::path& out) {
    sc::ScenarioConfig c = sc::default_config(sc::Scenario::levels_two_photon);
    c.sweep = spectra::Grid{1.0, 1.1, 11};
    c.n_levels = 5;
    c.output_dir = out;
    return c;
}

}  // namespace

TEST_SUITE("scenarios") {

TEST_CASE("scenario names round-trip") {
    for (const auto s : sc::all_scenarios()) CHECK(sc::parse_scenario(sc::to_string(s)) == s);
    CHECK_THROWS_AS(sc::parse_scenario("no_such_scenario"), ConfigError);
}

TEST_CASE("default configs carry the reference parameters") {
    const auto dyn = sc::default_config(sc::Scenario::dynamics_two_photon);
    CHECK(dyn.model.omega_m == 1.05);
    CHECK(dyn.model.kappa == 0.05);
    CHECK(std::abs(dyn.model.omega_q - 1.052) < 0.003);
    REQUIRE(dyn.cases.size() == 3);
    CHECK(dyn.cases[1].lindblad.gamma_a == 1e-2);
    CHECK(dyn.cases[1].lindblad.gamma_m == 0.0);
    CHECK(dyn.cases[2].lindblad.gamma_m == 2 * dyn.cases[2].lindblad.gamma_a);

    const auto one = sc::default_config(sc::Scenario::levels_one_photon);
    CHECK(one.model.kappa == 0.08);
    CHECK(one.model.omega_m == 1.2);
    CHECK(one.model.coupling_kind == CouplingKind::one_photon);

    const auto drv = sc::default_config(sc::Scenario::driven_dynamics);
    REQUIRE(drv.drive.has_value());
    CHECK(drv.drive->omega_d == drv.model.omega_m);
    CHECK(drv.lindblad.gamma_a == 1e-4);
    CHECK(drv.lindblad.gamma_m == 1e-4);
    CHECK(drv.lindblad.gamma_q == 1e-4);
    // sigma = 1 / (10 Omega_eff) with Omega_eff = gap / 2 ~ 3.5e-3
    CHECK(drv.drive->sigma == doctest::Approx(1.0 / (10 * 3.5e-3)).epsilon(0.1));
}

TEST_CASE("config JSON round-trip and overrides") {
    const auto c = sc::default_config(sc::Scenario::driven_dynamics);
    io::json j = sc::config_to_json(c);
    const auto back = sc::config_from_json(j);
    CHECK(sc::config_to_json(back) == j);

    sc::apply_override(j, "model.kappa=0.06");
    sc::apply_override(j, "dynamics.samples=11");
    sc::apply_override(j, "output_dir=somewhere");
    const auto o = sc::config_from_json(j);
    CHECK(o.model.kappa == 0.06);
    CHECK(o.samples == 11);
    CHECK(o.output_dir == fsys::path("somewhere"));

    CHECK_THROWS_AS(sc::apply_override(j, "no_equals_sign"), ConfigError);
    CHECK_THROWS_AS(sc::apply_override(j, "model..kappa=1"), ConfigError);

    io::json bad = j;
    bad["drive"] = nullptr;
    CHECK_THROWS_AS(sc::config_from_json(bad), ConfigError);
    bad = j;
    bad["model"]["omega_m"] = -1.0;
    CHECK_THROWS_AS(sc::config_from_json(bad), ConfigError);
    bad = j;
    bad["model"]["coupling_kind"] = "three_photon";
    CHECK_THROWS_AS(sc::config_from_json(bad), ConfigError);
    bad = j;
    bad["space"]["n_phonon_max"] = 1;
    CHECK_THROWS_AS(sc::config_from_json(bad), ConfigError);
    CHECK_THROWS_AS(sc::config_from_json(io::json::object()), ConfigError);
}

TEST_CASE("scenario output is written and deterministic") {
    const auto a = fresh_dir("det_a");
    const auto b = fresh_dir("det_b");
    const auto ra = sc::run_scenario(quick_levels(a));
    const auto rb = sc::run_scenario(quick_levels(b));
    CHECK(fsys::exists(a / "levels_two_photon" / "levels.csv"));
    CHECK(fsys::exists(a / "levels_two_photon" / "summary.json"));
    CHECK(fsys::exists(a / "levels_two_photon" / "splitting.json"));
    CHECK(slurp(a / "levels_two_photon" / "levels.csv") ==
          slurp(b / "levels_two_photon" / "levels.csv"));
    CHECK(ra.passed());

    const io::CsvTable t = io::read_csv(a / "levels_two_photon" / "levels.csv");
    CHECK(t.header.front() == "omega_q");
    CHECK(t.header.size() == 6);
    CHECK(t.rows.size() == 11);

    const auto summary = io::json::parse(slurp(a / "levels_two_photon" / "summary.json"));
    CHECK(summary.at("passed").get<bool>());
    CHECK(summary.at("results").at("splitting").at("gap").get<double>() > 0.0);
}

TEST_CASE("errors propagate with scenario context") {
    const auto out = fresh_dir("fail");
    auto c = quick_levels(out);
    c.bracket = spectra::Bracket{1.2, 1.3};  // no interior minimum
    CHECK_THROWS_AS(sc::run_scenario(c), Error);
    const auto summary = io::json::parse(slurp(out / "levels_two_photon" / "summary.json"));
    CHECK_FALSE(summary.at("passed").get<bool>());
    CHECK(summary.at("error").get<std::string>().find("levels_two_photon") == 0);
}

TEST_CASE("checks that fail still produce a complete summary") {
    const auto out = fresh_dir("soft");
    sc::ScenarioConfig c = sc::default_config(sc::Scenario::levels_one_photon);
    c.sweep = spectra::Grid{0.15, 0.25, 5};
    c.output_dir = out;
    const auto r = sc::run_scenario(c);
    const auto summary = io::json::parse(slurp(out / "levels_one_photon" / "summary.json"));
    CHECK(summary.at("passed").get<bool>() == r.passed());
    CHECK(summary.at("checks").size() == r.checks.size());
    CHECK(summary.contains("results"));
}

TEST_CASE("driven scenario requires a drive") {
    sc::ScenarioConfig c = sc::default_config(sc::Scenario::driven_dynamics);
    c.drive.reset();
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("converge scenario") {
    sc::ScenarioConfig c = sc::default_config(sc::Scenario::converge);
    c.output_dir = fresh_dir("converge");
    const auto r = sc::run_scenario(c);
    CHECK(r.passed());
    const io::CsvTable t = io::read_csv(c.output_dir / "converge" / "converge.csv");
    CHECK(t.rows.size() == 2);
    CHECK(t.rows[1][0] == t.rows[0][0] + 2);
}

}
