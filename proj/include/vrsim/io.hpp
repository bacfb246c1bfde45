// io.hpp: CSV / JSON output contract consumed by the plotting tools

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "vrsim/dynamics.hpp"
#include "vrsim/spectra.hpp"

namespace vrsim::io {

using nlohmann::json;

inline constexpr const char* time_series_header =
    "t,omega_eff_t,exp_atom,exp_photon,exp_phonon,g2_qp,trace,purity";

// 12 significant digits, locale independent.
std::string format_number(double x);

void write_time_series_csv(const std::filesystem::path& path, const dynamics::TimeSeries& ts);

// Columns: omega_q, level_0 .. level_{L-1}
void write_level_table_csv(const std::filesystem::path& path, const spectra::LevelTable& table);

// Generic numeric table with a caller-supplied header.
void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::filesystem::path& path);

json to_json(const BareLabel& label);
json to_json(const spectra::SplittingResult& r);

void write_json(const std::filesystem::path& path, const json& j);

} // namespace vrsim::io
