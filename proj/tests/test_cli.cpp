#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dchain/cli.hpp"
#include "dchain/errors.hpp"

using namespace dchain;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "dchain");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dchain_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("thermo writes csv, json, svg and heat maps") {
  const auto dir = fresh_dir("thermo");
  CHECK(run({"thermo", "--case", "a", "--t", "0.25,0.5", "--h", "0:4:0.5", "--format", "csv,json,svg", "--out",
             dir.string()}) == kExitOk);
  const std::string csv = slurp(dir / "thermo_a.csv");
  CHECK(csv.rfind("h,T,f,s,m\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 9);
  CHECK(nlohmann::json::parse(slurp(dir / "thermo_a.json")).size() == 18);
  CHECK(fs::exists(dir / "thermo_a_m.svg"));
  CHECK(fs::exists(dir / "thermo_a_s.svg"));
  CHECK(fs::exists(dir / "thermo_a_m_heatmap.csv"));
  CHECK(fs::exists(dir / "thermo_a_s_heatmap.csv"));
}

TEST_CASE("outputs are deterministic") {
  const auto d1 = fresh_dir("det1");
  const auto d2 = fresh_dir("det2");
  for (const auto& d : {d1, d2}) {
    CHECK(run({"thermo", "--case", "c", "--t", "0.35", "--h", "0:2:0.1", "--format", "csv,json", "--out", d.string()}) ==
          kExitOk);
    CHECK(run({"mc", "--case", "c", "--t", "0.5", "--h", "0.5,1", "--cells", "20", "--sweeps", "400", "--burn-in",
               "100", "--threads", "2", "--out", d.string()}) == kExitOk);
  }
  CHECK(slurp(d1 / "thermo_c.csv") == slurp(d2 / "thermo_c.csv"));
  CHECK(slurp(d1 / "thermo_c.json") == slurp(d2 / "thermo_c.json"));
  CHECK(slurp(d1 / "mc_c.csv") == slurp(d2 / "mc_c.csv"));
}

TEST_CASE("explicit couplings") {
  const auto dir = fresh_dir("explicit");
  CHECK(run({"thermo", "--jd", "1", "--j", "-1", "--jt", "-1", "--t", "1", "--h", "0", "--out", dir.string()}) ==
        kExitOk);
  CHECK(fs::exists(dir / "thermo_custom.csv"));
  CHECK(run({"thermo", "--jd", "1", "--t", "1", "--out", dir.string()}) == kExitUsage);
  CHECK(run({"thermo", "--case", "a", "--jd", "1", "--j", "1", "--jt", "1", "--out", dir.string()}) == kExitUsage);
}

TEST_CASE("usage errors") {
  CHECK(run({}) == kExitUsage);
  CHECK(run({"nonsense"}) == kExitUsage);
  CHECK(run({"thermo", "--case", "z"}) == kExitUsage);
  CHECK(run({"thermo", "--case", "a", "--h", "0:1"}) == kExitUsage);
  CHECK(run({"thermo", "--case", "a", "--format", "pdf"}) == kExitUsage);
  CHECK(run({"--help"}) == kExitOk);
}

TEST_CASE("numeric and contract failures") {
  CHECK(run({"thermo", "--case", "a", "--t", "-1", "--out", fresh_dir("neg").string()}) == kExitNumeric);
  CHECK(run({"enumerate", "--case", "a", "--cells", "1..12", "--out", fresh_dir("big").string()}) == kExitNumeric);
}

TEST_CASE("unwritable output is an I/O failure") {
  const auto dir = fresh_dir("blocked");
  fs::create_directories(dir);
  std::ofstream(dir / "file") << "x";
  CHECK(run({"thermo", "--case", "a", "--out", (dir / "file" / "sub").string()}) == kExitIo);
}

TEST_CASE("empty grid is a no-op") {
  const auto dir = fresh_dir("empty");
  CHECK(run({"thermo", "--case", "a", "--h", "", "--out", dir.string()}) == kExitOk);
  CHECK(!fs::exists(dir / "thermo_a.csv"));
}

TEST_CASE("enumerate reports the sequence") {
  const auto dir = fresh_dir("enumerate");
  CHECK(run({"enumerate", "--case", "b", "--h", "2", "--cells", "1..8", "--format", "csv,json", "--out",
             dir.string()}) == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "enumerate_b.json"));
  CHECK(j["rings"].size() == 8);
  CHECK(j["rings"][7]["omega"] == "1154");
  bool tagged = false;
  for (const auto& m : j["omega_matches"]) tagged = tagged || m == "pell_lucas(n)";
  CHECK(tagged);
}

TEST_CASE("critical report") {
  const auto dir = fresh_dir("critical");
  CHECK(run({"critical", "--case", "d", "--format", "json", "--out", dir.string()}) == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "critical_d.json"));
  REQUIRE(j.size() == 1);
  CHECK(j[0]["h_c"] == "1/1");
  CHECK(j[0]["m0"].get<double>() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("config file with flag override") {
  const auto dir = fresh_dir("config");
  fs::create_directories(dir);
  const auto cfg = dir / "run.cfg";
  std::ofstream(cfg) << "# thermo run\ncase = b\nh = 0:1:0.5\nt = 0.3\nout = " << dir.string() << "\n";
  CHECK(run({"thermo", "--config", cfg.string(), "--t", "0.7"}) == kExitOk);
  const std::string csv = slurp(dir / "thermo_b.csv");
  CHECK(csv.find(",0.7,") != std::string::npos);
  CHECK(csv.find(",0.3,") == std::string::npos);
  CHECK(run({"thermo", "--config", (dir / "missing.cfg").string()}) == kExitIo);
}

TEST_CASE("config expansion places keys after the subcommand") {
  const auto dir = fresh_dir("expand");
  fs::create_directories(dir);
  std::ofstream(dir / "c.cfg") << "case = a\n";
  const auto args = expand_config({"dchain", "thermo", "--config=" + (dir / "c.cfg").string(), "--t", "1"});
  CHECK(args == std::vector<std::string>{"dchain", "thermo", "--case=a", "--t", "1"});
}

TEST_CASE("reproduce subset") {
  const auto dir = fresh_dir("reproduce");
  CHECK(run({"reproduce", "--only", "6", "10", "--out", dir.string()}) == kExitOk);
  const std::string text = slurp(dir / "reproduce_summary.txt");
  CHECK(text.find("PASS  6") != std::string::npos);
  CHECK(text.find("PASS  10") != std::string::npos);
  CHECK(nlohmann::json::parse(slurp(dir / "reproduce_summary.json")).size() == 2);
}
