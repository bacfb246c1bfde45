#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "vrsim/errors.hpp"
#include "vrsim/io.hpp"

using namespace vrsim;
namespace fsys = std::filesystem;

namespace {

fsys::path scratch(const std::string& name) {
    const fsys::path dir = fsys::temp_directory_path() / "vrsim_test_io";
    fsys::create_directories(dir);
    return dir / name;
}

std::string slurp(const fsys::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("time-series CSV contract") {
    dynamics::TimeSeries ts;
    ts.times = {0.0, 0.5};
    ts.omega_eff_t = {0.0, 0.25};
    ts.exp_atom = {0.0, 0.125};
    ts.exp_photon = {0.0, 1e-20};
    ts.exp_phonon = {1.0, 0.875};
    ts.g2_qp = {0.0, 0.0};
    ts.trace = {1.0, 1.0};
    ts.purity = {1.0, 0.99};
    const auto path = scratch("series.csv");
    io::write_time_series_csv(path, ts);

    const std::string text = slurp(path);
    CHECK(text.substr(0, text.find('\n')) ==
          "t,omega_eff_t,exp_atom,exp_photon,exp_phonon,g2_qp,trace,purity");

    const io::CsvTable t = io::read_csv(path);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.column("exp_phonon") == 4);
    CHECK(t.column("missing") == -1);
    CHECK(t.rows[1][t.column("exp_atom")] == 0.125);
    CHECK(t.rows[1][t.column("exp_photon")] == 1e-20);
    CHECK(t.rows[1][t.column("purity")] == 0.99);
}

TEST_CASE("level table CSV contract") {
    spectra::LevelTable lt;
    lt.omega_q = {0.8, 0.9};
    lt.levels = {{0.0, 0.8, 1.05}, {0.0, 0.9, 1.05}};
    const auto path = scratch("levels.csv");
    io::write_level_table_csv(path, lt);
    const io::CsvTable t = io::read_csv(path);
    CHECK(t.header == std::vector<std::string>{"omega_q", "level_0", "level_1", "level_2"});
    CHECK(t.rows[1][2] == 0.9);
}

TEST_CASE("number formatting round-trips to 12 significant digits") {
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(io::format_number(-2.5e-9) == "-2.5e-09");
}

TEST_CASE("malformed CSV is rejected") {
    const auto empty = scratch("empty.csv");
    std::ofstream(empty).close();
    CHECK_THROWS(io::read_csv(empty));

    const auto ragged = scratch("ragged.csv");
    std::ofstream(ragged) << "a,b\n1,2\n3\n";
    CHECK_THROWS(io::read_csv(ragged));

    const auto text = scratch("text.csv");
    std::ofstream(text) << "a,b\n1,x\n";
    CHECK_THROWS(io::read_csv(text));

    CHECK_THROWS(io::read_csv(scratch("does_not_exist.csv")));
}

TEST_CASE("splitting result JSON") {
    spectra::SplittingResult r;
    r.omega_q_min = 1.05;
    r.gap = 7e-3;
    r.targets = spectra::default_targets(CouplingKind::two_photon);
    const io::json j = io::to_json(r);
    CHECK(j.at("gap").get<double>() == 7e-3);
    CHECK(j.at("omega_eff").get<double>() == 3.5e-3);
    CHECK(j.at("omega_q_min").get<double>() == 1.05);
    CHECK(j.at("targets").size() == 2);
}

}
