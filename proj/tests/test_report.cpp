#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "dchain/errors.hpp"
#include "dchain/report.hpp"
#include "dchain/svg.hpp"

using namespace dchain;

TEST_CASE("number formatting") {
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("grid parsing") {
  CHECK(parse_grid("0:1:0.25") == std::vector<double>{0, 0.25, 0.5, 0.75, 1.0});
  // The stop value is reached within half a step.
  CHECK(parse_grid("0:4:0.01").size() == 401);
  CHECK(parse_grid("0:0.99:0.1").size() == 11);
  CHECK(parse_grid("1, 2.5,3") == std::vector<double>{1, 2.5, 3});
  CHECK(parse_grid("0.35") == std::vector<double>{0.35});
  CHECK(parse_grid("").empty());
  CHECK(parse_grid("2:1:0.5").empty());
  CHECK_THROWS_AS(parse_grid("0:1"), ContractViolation);
  CHECK_THROWS_AS(parse_grid("0:1:0"), ContractViolation);
  CHECK_THROWS_AS(parse_grid("a,b"), ContractViolation);
  CHECK(parse_int_range("1..8") == std::pair{1, 8});
  CHECK(parse_int_range("5") == std::pair{5, 5});
  CHECK_THROWS_AS(parse_int_range("1..x"), ContractViolation);
}

TEST_CASE("config text") {
  const auto kv = parse_config_text("# sweep\ncase = a\n\n  t=0.25  # low\nh = 0:4:0.01\n");
  REQUIRE(kv.size() == 3);
  CHECK(kv[0] == std::pair<std::string, std::string>{"case", "a"});
  CHECK(kv[1] == std::pair<std::string, std::string>{"t", "0.25"});
  CHECK(kv[2] == std::pair<std::string, std::string>{"h", "0:4:0.01"});
  CHECK_THROWS_AS(parse_config_text("just words\n"), ContractViolation);
}

TEST_CASE("sweep csv and json") {
  const SweepTable table{{0.5, 1.0, -1.0, 0.5, 0.25}, {1.0, 1.0, -1.5, 0.4, 0.5}};
  std::ostringstream os;
  write_sweep_csv(os, table);
  CHECK(os.str() == "h,T,f,s,m\n0.5,1,-1,0.5,0.25\n1,1,-1.5,0.4,0.5\n");
  const auto j = sweep_json(table);
  REQUIRE(j.size() == 2);
  CHECK(j[0].dump() == R"({"h":0.5,"T":1.0,"f":-1.0,"s":0.5,"m":0.25})");
}

TEST_CASE("mc csv") {
  const std::vector<double> hs{0.1};
  const std::vector<McResult> rs{{0.2, 0.01, -1.0, 0.02, 0.3}};
  std::ostringstream os;
  write_mc_csv(os, hs, 0.25, rs);
  CHECK(os.str() == "h,T,m_mc,m_err,e_mc,e_err,acceptance\n0.1,0.25,0.2,0.01,-1,0.02,0.3\n");
  CHECK_THROWS_AS(write_mc_csv(os, std::vector<double>{0.1, 0.2}, 0.25, rs), ContractViolation);
}

TEST_CASE("heat map csv") {
  const std::vector<double> hs{0, 1};
  const std::vector<double> ts{0.5, 2};
  const SweepTable table{{0, 0.5, 0, 0, 0.0}, {1, 0.5, 0, 0, 0.1}, {0, 2, 0, 0, 0.0}, {1, 2, 0, 0, 0.2}};
  std::ostringstream os;
  write_heatmap_csv(os, table, hs, ts, &ThermoRow::m);
  CHECK(os.str() == "T\\h,0,1\n0.5,0,0.1\n2,0,0.2\n");
}

TEST_CASE("file writing errors name the path") {
  try {
    write_text_file("/nonexistent-dir/x/out.csv", "x");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/x/out.csv") != std::string::npos);
  }
}

TEST_CASE("svg rendering") {
  LinePlot plot{"m(h)", "h", "m", {}};
  plot.series.push_back({"exact", {0, 1, 2}, {0, 0.5, 1}, {}, "#000000", false});
  plot.series.push_back({"mc", {0.5, 1.5}, {0.2, 0.8}, {0.05, 0.05}, "#ff0000", true});
  const std::string svg = render_svg(plot);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK(svg.find("exact") != std::string::npos);
  CHECK(render_svg(plot) == svg);
  CHECK(render_svg(LinePlot{}).find("</svg>") != std::string::npos);

  const auto ticks = nice_ticks(0.0, 4.0);
  CHECK(ticks.front() == 0.0);
  CHECK(ticks.back() == 4.0);
  CHECK(nice_ticks(0.0, 1.0).size() >= 3);
}
