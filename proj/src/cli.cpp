#include "dchain/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dchain/checks.hpp"
#include "dchain/critical.hpp"
#include "dchain/enumerate.hpp"
#include "dchain/errors.hpp"
#include "dchain/montecarlo.hpp"
#include "dchain/report.hpp"
#include "dchain/sequences.hpp"
#include "dchain/svg.hpp"
#include "dchain/transfer.hpp"

namespace dchain {

namespace fs = std::filesystem;

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

// Options shared by every subcommand that works on one chain.
struct ModelOptions {
  std::string case_tag;
  std::optional<double> j_d, j, j_t;
  std::string out_dir = ".";
  std::string formats = "csv";
  int threads = 0;  // 0: DCHAIN_THREADS or hardware concurrency

  void add_to(CLI::App& app, bool with_formats = true) {
    app.add_option("--case", case_tag, "Preset coupling set: a, b, c or d");
    app.add_option("--jd", j_d, "Explicit J_d (with --j and --jt)");
    app.add_option("--j", j, "Explicit J");
    app.add_option("--jt", j_t, "Explicit J_t");
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    if (with_formats) app.add_option("--format", formats, "Comma list of csv, json, svg")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads (0: automatic)")->check(CLI::NonNegativeNumber);
  }

  ExchangeConstants exchange() const {
    const bool explicit_set = j_d || j || j_t;
    if (!case_tag.empty() && explicit_set) throw CLI::ValidationError("--case", "cannot be combined with --jd/--j/--jt");
    if (!case_tag.empty()) {
      try {
        return preset(parse_case(case_tag));
      } catch (const DomainError&) {
        throw CLI::ValidationError("--case", "expected one of a, b, c, d");
      }
    }
    if (!(j_d && j && j_t)) throw CLI::ValidationError("model", "give --case or all of --jd, --j, --jt");
    ExchangeConstants ex{*j_d, *j, *j_t};
    validate(ex);
    return ex;
  }

  std::string tag() const { return case_tag.empty() ? "custom" : case_tag; }

  bool wants(std::string_view fmt) const {
    std::stringstream ss(formats);
    std::string item;
    while (std::getline(ss, item, ','))
      if (item == fmt) return true;
    return false;
  }

  void check_formats() const {
    std::stringstream ss(formats);
    std::string item;
    while (std::getline(ss, item, ','))
      if (item != "csv" && item != "json" && item != "svg")
        throw CLI::ValidationError("--format", "unknown format '" + item + "'");
  }

  int workers() const { return threads > 0 ? threads : default_workers(); }

  fs::path path(const std::string& name) const {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
    return fs::path(out_dir) / name;
  }
};

std::vector<double> grid_option(const std::string& text, const std::string& name) {
  try {
    return parse_grid(text);
  } catch (const ContractViolation& e) {
    throw CLI::ValidationError(name, e.what());
  }
}

void write_json(const fs::path& path, const nlohmann::ordered_json& j) { write_text_file(path, j.dump(2) + "\n"); }

// ---------------------------------------------------------------- thermo

struct ThermoOptions {
  ModelOptions model;
  std::string h_grid = "0:4:0.01";
  std::string t_grid = "0.25";
};

void cmd_thermo(const ThermoOptions& o) {
  o.model.check_formats();
  const auto ex = o.model.exchange();
  const auto hs = grid_option(o.h_grid, "--h");
  const auto ts = grid_option(o.t_grid, "--t");
  if (hs.empty() || ts.empty()) {
    std::cerr << "warning: empty grid, nothing to compute\n";
    return;
  }
  for (double t : ts) require_positive_temperature({0.0, t});
  const SweepTable table = sweep(ex, hs, ts, o.model.workers());
  const std::string stem = "thermo_" + o.model.tag();

  if (o.model.wants("csv")) {
    std::ostringstream os;
    write_sweep_csv(os, table);
    write_text_file(o.model.path(stem + ".csv"), os.str());
  }
  if (o.model.wants("json")) write_json(o.model.path(stem + ".json"), sweep_json(table));
  if (o.model.wants("svg")) {
    if (hs.size() > 1) {
      for (auto [column, name] : {std::pair{&ThermoRow::m, std::string("m")}, std::pair{&ThermoRow::s, std::string("s")}}) {
        LinePlot plot{name + "(h), case " + o.model.tag(), "h", name, {}};
        for (std::size_t k = 0; k < ts.size(); ++k) {
          PlotSeries series;
          series.label = "T=" + format_number(ts[k]);
          series.color = kPalette[k % std::size(kPalette)];
          for (std::size_t i = 0; i < hs.size(); ++i) {
            series.x.push_back(hs[i]);
            series.y.push_back(table[k * hs.size() + i].*column);
          }
          plot.series.push_back(std::move(series));
        }
        write_text_file(o.model.path(stem + "_" + name + ".svg"), render_svg(plot));
      }
    }
    if (hs.size() > 1 && ts.size() > 1) {
      for (auto [column, name] : {std::pair{&ThermoRow::m, std::string("m")}, std::pair{&ThermoRow::s, std::string("s")}}) {
        std::ostringstream os;
        write_heatmap_csv(os, table, hs, ts, column);
        write_text_file(o.model.path(stem + "_" + name + "_heatmap.csv"), os.str());
      }
    }
  }
  std::cout << "wrote " << table.size() << " points for case " << o.model.tag() << " to " << o.model.out_dir << "\n";
}

// ---------------------------------------------------------------- mc

struct McOptions {
  ModelOptions model;
  std::string h_grid = "0.1:4:0.1";
  double t = 0.25;
  int cells = 0;  // 0: from the correlation length
  McParams params;
};

void cmd_mc(const McOptions& o) {
  o.model.check_formats();
  const auto ex = o.model.exchange();
  const auto hs = grid_option(o.h_grid, "--h");
  require_positive_temperature({0.0, o.t});
  if (hs.empty()) {
    std::cerr << "warning: empty grid, nothing to compute\n";
    return;
  }
  const int n_cells = o.cells > 0 ? o.cells : mc_ring_size(ex, hs, o.t);
  const ChainSpec spec{n_cells, ex};
  const auto results = mc_curve(spec, hs, o.t, o.params, o.model.workers());
  const std::string stem = "mc_" + o.model.tag();

  if (o.model.wants("csv")) {
    std::ostringstream os;
    write_mc_csv(os, hs, o.t, results);
    write_text_file(o.model.path(stem + ".csv"), os.str());
  }
  if (o.model.wants("json")) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < hs.size(); ++i) {
      nlohmann::ordered_json row;
      row["h"] = hs[i];
      row["T"] = o.t;
      row["m_mc"] = results[i].m_mean;
      row["m_err"] = results[i].m_stderr;
      row["e_mc"] = results[i].e_mean;
      row["e_err"] = results[i].e_stderr;
      row["acceptance"] = results[i].acceptance_rate;
      row["m_exact"] = magnetization(ex, {hs[i], o.t});
      j.push_back(row);
    }
    write_json(o.model.path(stem + ".json"), j);
  }
  if (o.model.wants("svg")) {
    const auto [lo, hi] = std::minmax_element(hs.begin(), hs.end());
    PlotSeries exact{"exact", {}, {}, {}, kPalette[0], false};
    for (int i = 0; i <= 400; ++i) {
      const double h = *lo + (*hi - *lo) * i / 400.0;
      exact.x.push_back(h);
      exact.y.push_back(magnetization(ex, {h, o.t}));
    }
    PlotSeries mc{"Monte Carlo, " + std::to_string(n_cells) + " cells", {}, {}, {}, kPalette[1], true};
    for (std::size_t i = 0; i < hs.size(); ++i) {
      mc.x.push_back(hs[i]);
      mc.y.push_back(results[i].m_mean);
      mc.y_err.push_back(results[i].m_stderr);
    }
    LinePlot plot{"m(h) at T=" + format_number(o.t) + ", case " + o.model.tag(), "h", "m", {exact, mc}};
    write_text_file(o.model.path(stem + ".svg"), render_svg(plot));
  }

  int outside = 0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double z = (results[i].m_mean - magnetization(ex, {hs[i], o.t})) / results[i].m_stderr;
    if (std::fabs(z) > 3.0) ++outside;
  }
  std::cout << "case " << o.model.tag() << ": " << hs.size() << " points on " << n_cells << " cells, " << outside
            << " outside 3 sigma of the exact curve\n";
}

// ---------------------------------------------------------------- enumerate

struct EnumerateOptions {
  ModelOptions model;
  std::string h = "0";
  std::string cells = "1..8";
  bool plus_zero = false;
};

void cmd_enumerate(const EnumerateOptions& o) {
  o.model.check_formats();
  const auto ex = o.model.exchange();
  Rational h;
  std::pair<int, int> range;
  try {
    h = parse_rational(o.h);
    range = parse_int_range(o.cells);
  } catch (const std::exception& e) {
    throw CLI::ValidationError("enumerate", e.what());
  }
  const FieldMode mode = o.plus_zero ? FieldMode::plus_zero : FieldMode::exact;
  const auto reports = ground_state_sequence(ex, h, range.first, range.second, mode);
  std::vector<BigInt> omega;
  for (const auto& r : reports) omega.push_back(r.omega);
  const auto matches = omega.size() >= 4 ? identify(omega, range.first) : std::vector<SequenceMatch>{};

  std::cout << "n_cells,e_min,omega,m_sum,m\n";
  std::ostringstream csv;
  csv << "n_cells,e_min,omega,m_sum,m\n";
  for (const auto& r : reports) {
    const std::string line = std::to_string(r.n_cells) + "," + format_rational(r.e_min) + "," + format_bigint(r.omega) +
                             "," + format_bigint(r.m_sum) + "," + format_number(r.magnetization_per_spin());
    std::cout << line << "\n";
    csv << line << "\n";
  }
  std::string tags;
  for (const auto& m : matches) tags += (tags.empty() ? "" : ", ") + describe(m);
  std::cout << "omega sequence: " << (tags.empty() ? "no match" : tags) << "\n";
  if (reports.size() >= 3) {
    const double s = residual_entropy_estimate(omega);
    std::cout << "entropy estimate ln(omega_n/omega_{n-1})/3 = " << format_number(s) << "\n";
  }

  const std::string stem = "enumerate_" + o.model.tag();
  if (o.model.wants("csv")) write_text_file(o.model.path(stem + ".csv"), csv.str());
  if (o.model.wants("json")) {
    nlohmann::ordered_json j;
    j["h"] = format_rational(h);
    j["mode"] = o.plus_zero ? "plus_zero" : "exact";
    j["rings"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) j["rings"].push_back(to_json(r));
    j["omega_matches"] = nlohmann::ordered_json::array();
    for (const auto& m : matches) j["omega_matches"].push_back(describe(m));
    write_json(o.model.path(stem + ".json"), j);
  }
}

// ---------------------------------------------------------------- critical

struct CriticalOptions {
  ModelOptions model;
  int cells = 7;
};

void cmd_critical(const CriticalOptions& o) {
  o.model.check_formats();
  const auto ex = o.model.exchange();
  const auto scan = critical_fields(ex, o.cells);
  const Rational m0 = residual_magnetization(ex, std::max(3, o.cells - 1));
  for (const auto& w : scan.warnings) std::cerr << "warning: " << w << "\n";

  std::cout << "m0 = " << format_rational(m0) << "\n";
  std::cout << "h_c,m_below,m_above,m_at,s_at\n";
  std::ostringstream csv;
  csv << "case,h_c,m0,m_below,m_above,m_at,s_at\n";
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& p : scan.points) {
    std::cout << format_rational(p.h_c) << "," << format_number(p.m_below) << "," << format_number(p.m_above) << ","
              << format_number(p.m_at) << "," << format_number(p.s_at) << "\n";
    csv << o.model.tag() << "," << format_rational(p.h_c) << "," << format_number(to_double(m0)) << ","
        << format_number(p.m_below) << "," << format_number(p.m_above) << "," << format_number(p.m_at) << ","
        << format_number(p.s_at) << "\n";
    j.push_back(to_json(p, o.model.tag(), m0));
  }
  const std::string stem = "critical_" + o.model.tag();
  if (o.model.wants("csv")) write_text_file(o.model.path(stem + ".csv"), csv.str());
  if (o.model.wants("json")) write_json(o.model.path(stem + ".json"), j);
}

// ---------------------------------------------------------------- reproduce

struct ReproduceOptions {
  std::string out_dir = ".";
  int threads = 0;
  std::vector<int> only;
};

bool cmd_reproduce(const ReproduceOptions& o) {
  AcceptanceOptions opts;
  opts.workers = o.threads > 0 ? o.threads : default_workers();
  std::vector<CriterionReport> reports;
  auto emit = [&](const CriterionReport& rep) {
    std::cout << summary_line(rep) << "\n";
    for (const auto& c : rep.checks)
      std::cout << "      " << (c.passed ? "ok  " : "FAIL") << " " << c.id << ": " << c.detail << "\n";
    std::cout.flush();
    reports.push_back(rep);
  };
  if (o.only.empty()) {
    run_acceptance(opts, emit);
  } else {
    for (int k : o.only) emit(run_criterion(k, opts));
  }

  std::size_t total = 0, passed = 0;
  std::ostringstream text;
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& rep : reports) {
    text << summary_line(rep) << "\n";
    nlohmann::ordered_json jr;
    jr["criterion"] = rep.number;
    jr["title"] = rep.title;
    jr["passed"] = rep.passed();
    jr["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
      text << "      " << (c.passed ? "ok  " : "FAIL") << " " << c.id << ": " << c.detail << "\n";
      jr["checks"].push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"detail", c.detail}});
      ++total;
      if (c.passed) ++passed;
    }
    j.push_back(jr);
  }
  text << passed << "/" << total << " checks passed\n";
  std::cout << passed << "/" << total << " checks passed\n";

  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + o.out_dir + "': " + ec.message());
  write_text_file(fs::path(o.out_dir) / "reproduce_summary.txt", text.str());
  write_json(fs::path(o.out_dir) / "reproduce_summary.json", j);
  return passed == total;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::optional<std::string> config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (!config) return out;
  std::vector<std::string> injected;
  for (const auto& [key, value] : parse_config_text(read_file(*config))) injected.push_back("--" + key + "=" + value);
  // out[0] is the program name; out[1], when present, the subcommand.
  const std::size_t at = std::min<std::size_t>(out.size(), 2);
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
  return out;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Thermodynamics of the decorated triangle Ising chain"};
  // Long form only, since --h is the field grid.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", "dchain 1.0.0");
  app.footer(
      "Environment:\n  DCHAIN_THREADS  worker threads for sweeps and Monte Carlo curves when --threads is 0\n\n"
      "Any subcommand accepts --config FILE with one `key = value` per line (keys are long option\n"
      "names, # starts a comment). Flags on the command line override the file.\n\n"
      "Exit codes: 0 success, 1 usage error, 2 numeric or contract failure, 3 I/O failure.");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_placeholder;
  app.add_option("--config", config_placeholder, "Flat key = value file with option defaults");

  ThermoOptions thermo;
  auto* thermo_cmd = app.add_subcommand("thermo", "Exact f, s, m on an (h, T) grid");
  thermo.model.add_to(*thermo_cmd);
  thermo_cmd->add_option("--h", thermo.h_grid, "Field grid: start:stop:step, list or value")->capture_default_str();
  thermo_cmd->add_option("--t", thermo.t_grid, "Temperature grid")->capture_default_str();

  McOptions mc;
  auto* mc_cmd = app.add_subcommand("mc", "Metropolis magnetization curve with the exact curve alongside");
  mc.model.add_to(*mc_cmd);
  mc_cmd->add_option("--h", mc.h_grid, "Field grid")->capture_default_str();
  mc_cmd->add_option("--t", mc.t, "Temperature")->capture_default_str();
  mc_cmd->add_option("--cells", mc.cells, "Ring size (0: eight correlation lengths, at least 100)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  mc_cmd->add_option("--sweeps", mc.params.sweeps, "Measurement sweeps")->capture_default_str();
  mc_cmd->add_option("--burn-in", mc.params.burn_in, "Discarded sweeps")->capture_default_str();
  mc_cmd->add_option("--seed", mc.params.seed, "Master seed")->capture_default_str();
  mc_cmd->add_option("--bins", mc.params.n_bins, "Bins for error bars")->capture_default_str();
  mc_cmd->add_option("--anneal", mc.params.anneal_steps, "Annealing stages from 2T down to T")->capture_default_str();

  EnumerateOptions en;
  auto* en_cmd = app.add_subcommand("enumerate", "Exact ground-state counts on small rings");
  en.model.add_to(*en_cmd);
  en_cmd->add_option("--h", en.h, "Field as p/q or decimal")->capture_default_str();
  en_cmd->add_option("--cells", en.cells, "Ring sizes a..b (at most 9)")->capture_default_str();
  en_cmd->add_flag("--plus-zero", en.plus_zero, "h -> +0 selection instead of the exact field");

  CriticalOptions cr;
  auto* cr_cmd = app.add_subcommand("critical", "Zero-temperature critical fields and plateaus");
  cr.model.add_to(*cr_cmd);
  cr_cmd->add_option("--cells", cr.cells, "Largest ring used (3..9)")->capture_default_str();

  ReproduceOptions rp;
  auto* rp_cmd = app.add_subcommand("reproduce", "Run the full acceptance suite and write a summary");
  rp_cmd->add_option("--out", rp.out_dir, "Output directory")->capture_default_str();
  rp_cmd->add_option("--threads", rp.threads, "Worker threads (0: automatic)")->check(CLI::NonNegativeNumber);
  rp_cmd->add_option("--only", rp.only, "Run only these criteria (1-10)")
      ->check(CLI::Range(1, kCriterionCount))
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(args);
    std::vector<const char*> cargs;
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());

    if (*thermo_cmd) cmd_thermo(thermo);
    if (*mc_cmd) cmd_mc(mc);
    if (*en_cmd) cmd_enumerate(en);
    if (*cr_cmd) cmd_critical(cr);
    if (*rp_cmd) return cmd_reproduce(rp) ? kExitOk : kExitNumeric;
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace dchain
