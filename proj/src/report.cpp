#include "dchain/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dchain/errors.hpp"

namespace dchain {

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
  out << "h,T,f,s,m\n";
  for (const auto& r : table)
    out << format_number(r.h) << ',' << format_number(r.t) << ',' << format_number(r.f) << ','
        << format_number(r.s) << ',' << format_number(r.m) << '\n';
}

nlohmann::ordered_json sweep_json(const SweepTable& table) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : table) {
    nlohmann::ordered_json j;
    j["h"] = r.h;
    j["T"] = r.t;
    j["f"] = r.f;
    j["s"] = r.s;
    j["m"] = r.m;
    rows.push_back(std::move(j));
  }
  return rows;
}

void write_mc_csv(std::ostream& out, std::span<const double> h_grid, double t, std::span<const McResult> results) {
  if (h_grid.size() != results.size()) throw ContractViolation("grid and result lengths differ");
  out << "h,T,m_mc,m_err,e_mc,e_err,acceptance\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out << format_number(h_grid[i]) << ',' << format_number(t) << ',' << format_number(r.m_mean) << ','
        << format_number(r.m_stderr) << ',' << format_number(r.e_mean) << ',' << format_number(r.e_stderr) << ','
        << format_number(r.acceptance_rate) << '\n';
  }
}

void write_heatmap_csv(std::ostream& out, const SweepTable& table, std::span<const double> h_grid,
                       std::span<const double> t_grid, double ThermoRow::*column) {
  if (table.size() != h_grid.size() * t_grid.size()) throw ContractViolation("table does not match grid");
  out << "T\\h";
  for (double h : h_grid) out << ',' << format_number(h);
  out << '\n';
  for (std::size_t it = 0; it < t_grid.size(); ++it) {
    out << format_number(t_grid[it]);
    for (std::size_t ih = 0; ih < h_grid.size(); ++ih) out << ',' << format_number(table[it * h_grid.size() + ih].*column);
    out << '\n';
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

namespace {

double parse_double(std::string_view s) {
  std::string str(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw ContractViolation("not a number: '" + str + "'");
  }
  if (used != str.size() || !std::isfinite(v)) throw ContractViolation("not a number: '" + str + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  text = trim(text);
  std::vector<double> grid;
  if (text.empty()) return grid;
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw ContractViolation("grid must be start:stop:step");
    const double start = parse_double(trim(text.substr(0, c1)));
    const double stop = parse_double(trim(text.substr(c1 + 1, c2 - c1 - 1)));
    const double step = parse_double(trim(text.substr(c2 + 1)));
    if (!(step > 0.0)) throw ContractViolation("grid step must be positive");
    if (stop < start) return grid;
    const auto count = static_cast<long>(std::floor((stop - start) / step + 0.5));
    for (long i = 0; i <= count; ++i) grid.push_back(start + static_cast<double>(i) * step);
    return grid;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    grid.push_back(parse_double(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return grid;
}

std::pair<int, int> parse_int_range(std::string_view text) {
  text = trim(text);
  auto to_int = [](std::string_view s) {
    std::string str(trim(s));
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(str, &used);
    } catch (const std::exception&) {
      throw ContractViolation("not an integer: '" + str + "'");
    }
    if (used != str.size()) throw ContractViolation("not an integer: '" + str + "'");
    return v;
  };
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    return {to_int(text.substr(0, dots)), to_int(text.substr(dots + 2))};
  }
  const int v = to_int(text);
  return {v, v};
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view l = line;
    if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos)
      throw ContractViolation("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key(trim(l.substr(0, eq)));
    std::string value(trim(l.substr(eq + 1)));
    if (key.empty()) throw ContractViolation("config line " + std::to_string(line_no) + ": empty key");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

}  // namespace dchain
