#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dchain/montecarlo.hpp"
#include "dchain/transfer.hpp"

namespace dchain {

// Decimal with 12 significant digits; "-0" is printed as "0".
std::string format_number(double x);

// Header h,T,f,s,m; one row per sweep point.
void write_sweep_csv(std::ostream& out, const SweepTable& table);
nlohmann::ordered_json sweep_json(const SweepTable& table);

// Header h,T,m_mc,m_err,e_mc,e_err,acceptance.
void write_mc_csv(std::ostream& out, std::span<const double> h_grid, double t, std::span<const McResult> results);

// Matrix form for heat maps: first row "T\h,h0,h1,...", then one row per T.
// `column` selects f, s or m.
void write_heatmap_csv(std::ostream& out, const SweepTable& table, std::span<const double> h_grid,
                       std::span<const double> t_grid, double ThermoRow::*column);

// Writes the whole file at once; throws IoError naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

// "start:stop:step" (endpoints included within half a step), a comma list,
// or a single number. Empty string gives an empty grid.
std::vector<double> parse_grid(std::string_view text);

// "a..b" or a single integer.
std::pair<int, int> parse_int_range(std::string_view text);

// Flat key-value config: one `key = value` per line, `#` starts a comment,
// blank lines ignored. Keys are long option names without leading dashes.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);

}  // namespace dchain
