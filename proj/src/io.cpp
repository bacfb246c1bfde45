#include "vrsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "vrsim/errors.hpp"

namespace vrsim::io {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw Error("write to " + path.string() + " failed");
    }
}

} // namespace

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_time_series_csv(const std::filesystem::path& path, const dynamics::TimeSeries& ts) {
    std::ofstream out = open_for_write(path);
    out << time_series_header << '\n';
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out << format_number(ts.times[i]) << ',' << format_number(ts.omega_eff_t[i]) << ','
            << format_number(ts.exp_atom[i]) << ',' << format_number(ts.exp_photon[i]) << ','
            << format_number(ts.exp_phonon[i]) << ',' << format_number(ts.g2_qp[i]) << ','
            << format_number(ts.trace[i]) << ',' << format_number(ts.purity[i]) << '\n';
    }
    finish(out, path);
}

void write_level_table_csv(const std::filesystem::path& path, const spectra::LevelTable& table) {
    std::vector<std::string> header{"omega_q"};
    for (int l = 0; l < table.n_levels(); ++l) {
        header.push_back("level_" + std::to_string(l));
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(table.omega_q.size());
    for (std::size_t i = 0; i < table.omega_q.size(); ++i) {
        std::vector<double> row{table.omega_q[i]};
        row.insert(row.end(), table.levels[i].begin(), table.levels[i].end());
        rows.push_back(std::move(row));
    }
    write_table_csv(path, header, rows);
}

void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
    std::ofstream out = open_for_write(path);
    for (std::size_t c = 0; c < header.size(); ++c) {
        out << (c ? "," : "") << header[c];
    }
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) {
            throw Error("CSV row width does not match header for " + path.string());
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << format_number(row[c]);
        }
        out << '\n';
    }
    finish(out, path);
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    CsvTable table;
    std::string line;
    if (!std::getline(in, line) || line.empty()) {
        throw Error(path.string() + ": missing CSV header");
    }
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) table.header.push_back(cell);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw Error(path.string() + ": non-numeric cell '" + cell + "'");
            }
        }
        if (row.size() != table.header.size()) {
            throw Error(path.string() + ": ragged CSV row");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

json to_json(const BareLabel& label) {
    return json{{"n", label.n}, {"k", label.k}, {"q", label.q == AtomState::g ? "g" : "e"}};
}

json to_json(const spectra::SplittingResult& r) {
    return json{
        {"omega_q_min", r.omega_q_min},
        {"gap", r.gap},
        {"omega_eff", r.omega_eff()},
        {"branch_states", {r.branch_states.first, r.branch_states.second}},
        {"hybrid_overlaps",
         {{r.hybrid_overlaps[0][0], r.hybrid_overlaps[0][1]},
          {r.hybrid_overlaps[1][0], r.hybrid_overlaps[1][1]}}},
        {"targets", {to_json(r.targets.first), to_json(r.targets.second)}},
        {"evaluations", r.evaluations},
    };
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out = open_for_write(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

} // namespace vrsim::io
