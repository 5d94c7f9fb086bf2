#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "approx.hpp"
#include "cli.hpp"
#include "greenfpga/param_store.hpp"
#include "greenfpga/scenario.hpp"

using greenfpga::cli::Outcome;
using greenfpga::cli::run;

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

std::vector<std::string> lines(const std::string& text) { return split(text, '\n'); }

// Writes `doc` to a scratch file and returns its path.
std::string scratch(const std::string& name, const std::string& doc) {
  const auto dir = std::filesystem::temp_directory_path() / "greenfpga_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / name).string();
  std::ofstream(path) << doc;
  return path;
}

// component -> value for the given column of a breakdown table
std::map<std::string, double> column(const std::string& out, std::size_t col) {
  std::map<std::string, double> m;
  bool in_table = false;
  for (const auto& l : lines(out)) {
    if (l.empty() || l[0] == '#') continue;
    const auto cells = split(l);
    if (!in_table) {
      in_table = cells[0] == "component";
      continue;
    }
    m[cells[0]] = std::stod(cells.at(col));
  }
  return m;
}

std::string annotation(const std::string& out, const std::string& key) {
  for (const auto& l : lines(out)) {
    if (l.rfind("# " + key + ",", 0) == 0) return l.substr(key.size() + 3);
  }
  return "";
}

std::vector<std::string> annotations(const std::string& out, const std::string& key) {
  std::vector<std::string> v;
  for (const auto& l : lines(out)) {
    if (l.rfind("# " + key + ",", 0) == 0) v.push_back(l.substr(key.size() + 3));
  }
  return v;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("estimate an industry FPGA") {
  const auto r = run({"estimate", "--testcase", "IndustryFPGA1", "--apps", "3", "--years", "6", "--volume", "1e6"});
  REQUIRE(r.exit_code == 0);
  const auto c = column(r.out, 1);
  for (const char* k : {"design", "manufacturing", "packaging", "operational"}) CHECK(c.at("app_dev") < c.at(k));
  CHECK(c.at("operational") > c.at("manufacturing"));
  CHECK(rel_close(c.at("total"), c.at("embodied") + c.at("deployment"), 1e-5));
}

TEST_CASE("estimate with zero volume is design only") {
  const auto r = run({"estimate", "--testcase", "IndustryASIC1", "--volume", "0"});
  REQUIRE(r.exit_code == 0);
  const auto c = column(r.out, 1);
  CHECK(c.at("design") > 0);
  CHECK(c.at("total") == c.at("design"));
  for (const char* k : {"manufacturing", "packaging", "eol", "app_dev", "operational"}) CHECK(c.at(k) == 0.0);
}

TEST_CASE("unknown names list the alternatives") {
  auto r = run({"estimate", "--testcase", "IndustryFPGA9"});
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("IndustryFPGA1") != std::string::npos);
  CHECK(r.out.empty());

  r = run({"compare", "--domain", "Video"});
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("Crypto") != std::string::npos);
}

TEST_CASE("compare") {
  auto r = run({"compare", "--domain", "DNN", "--apps", "10"});
  REQUIRE(r.exit_code == 0);
  const double ratio = std::stod(annotation(r.out, "ratio"));
  CHECK(std::abs((1 - ratio) - 0.25) <= 0.10);
  CHECK(annotation(r.out, "verdict") == "FPGA-favored");

  r = run({"compare", "--domain", "Crypto", "--apps", "2"});
  CHECK(annotation(r.out, "verdict") == "FPGA-favored");

  // Same silicon on both sides and free development: a single application ties.
  const std::string doc = R"({"appdev": {"t_fe_hours": 0, "t_be_hours": 0, "t_config_hours": 0}})";
  r = run({"compare", "--domain", "DNN", "--apps", "1", "--area-ratio", "1", "--power-ratio", "1", "--params",
           scratch("free_dev.json", doc)});
  REQUIRE(r.exit_code == 0);
  CHECK(annotation(r.out, "verdict") == "tie");
  CHECK(annotation(r.out, "ratio") == "1");
}

TEST_CASE("sweep annotations") {
  const auto r = run({"sweep", "--domain", "DNN", "--lifetime", "2", "--volume", "1e6", "--sweep", "apps:1:8:8"});
  REQUIRE(r.exit_code == 0);
  const auto xs = annotations(r.out, "crossover");
  REQUIRE(xs.size() == 2);
  CHECK(xs[0] == "A2F,5,bracket,4,5");

  const auto none = run({"sweep", "--domain", "ImgProc", "--apps", "5", "--volume", "1e6", "--sweep", "lifetime"});
  CHECK(annotations(none.out, "crossover") == std::vector<std::string>{"none"});

  const auto vol = run({"sweep", "--domain", "DNN", "--apps", "5", "--lifetime", "2", "--sweep", "volume:1e3:1e7:25"});
  const auto vx = annotations(vol.out, "crossover");
  REQUIRE(vx.size() == 1);
  CHECK(vx[0].rfind("F2A,1e+06,", 0) == 0);

  CHECK(run({"sweep", "--domain", "DNN", "--sweep", "apps:1:2.5:4"}).exit_code == 1);
  CHECK(run({"sweep", "--domain", "DNN", "--sweep", "colour"}).exit_code == 1);
  CHECK(run({"sweep", "--domain", "DNN", "--sweep", "lifetime:2:1:4"}).exit_code == 1);
}

TEST_CASE("timeline jumps at fleet replacement") {
  const auto r = run({"timeline", "--domain", "ImgProc", "--apps", "45", "--lifetime", "1", "--horizon", "45"});
  REQUIRE(r.exit_code == 0);
  std::vector<double> jump_times;
  double prev_t = -1, prev_mfg = 0;
  for (const auto& l : lines(r.out)) {
    if (l.rfind("FPGA,", 0) != 0) continue;
    const auto c = split(l);
    const double t = std::stod(c[1]), mfg = std::stod(c[3]);
    if (t == prev_t && mfg > prev_mfg) jump_times.push_back(t);
    prev_t = t;
    prev_mfg = mfg;
  }
  CHECK(jump_times == std::vector<double>{15, 30});
}

TEST_CASE("one by one heatmap equals compare") {
  const auto h = run({"heatmap", "--domain", "ImgProc", "--lifetime", "1.5", "--sweep", "apps:3:3:1", "--sweep",
                      "volume:20000:20000:1"});
  const auto c = run({"compare", "--domain", "ImgProc", "--apps", "3", "--lifetime", "1.5", "--volume", "20000"});
  REQUIRE(h.exit_code == 0);
  REQUIRE(c.exit_code == 0);
  std::string cell;
  for (const auto& l : lines(h.out)) {
    if (l.rfind("3,20000,", 0) == 0) cell = l.substr(8);
  }
  CHECK(cell == annotation(c.out, "ratio"));
  CHECK(run({"heatmap", "--domain", "DNN", "--sweep", "apps:1:2:2", "--sweep", "apps:1:2:2"}).exit_code == 1);
}

TEST_CASE("byte identical reruns") {
  const std::vector<std::vector<std::string>> cmds = {
      {"compare", "--domain", "DNN", "--apps", "7"},
      {"sweep", "--domain", "ImgProc", "--sweep", "volume"},
      {"heatmap", "--domain", "Crypto", "--sweep", "apps:1:8:8", "--sweep", "lifetime"},
      {"timeline", "--domain", "DNN", "--apps", "3", "--format", "record"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("record format") {
  const auto r = run({"compare", "--domain", "Crypto", "--apps", "2", "--format", "record"});
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("tool") == "greenfpga");
  CHECK(j.at("command") == "compare");
  CHECK(j.contains("parameters"));
  CHECK(j.contains("provenance"));
  // Echoed parameters reproduce the run.
  CHECK(greenfpga::load_parameters(j.at("parameters").dump()) == greenfpga::bundled_defaults());
}

TEST_CASE("parameter sources") {
  const std::string doc = R"({"operation": {"use_grid_intensity_g_per_kwh": 800}})";
  const auto base = run({"compare", "--domain", "DNN", "--apps", "5", "--volume", "1e6"});
  const auto env = run({"compare", "--domain", "DNN", "--apps", "5", "--volume", "1e6"}, scratch("env.json", doc));
  REQUIRE(env.exit_code == 0);
  CHECK(annotation(env.out, "verdict") != annotation(base.out, "verdict"));

  const auto dir = std::filesystem::temp_directory_path() / "greenfpga_cli_test";
  std::filesystem::create_directories(dir);
  const auto params = (dir / "p.jsonc").string();
  std::ofstream(params) << "// dirtier grid\n" << doc;
  const auto file = run({"compare", "--domain", "DNN", "--apps", "5", "--volume", "1e6", "--params", params});
  CHECK(file.out.substr(file.out.find("# parameters")) == env.out.substr(env.out.find("# parameters")));

  std::ofstream(params) << R"({"eol": {"recycle_fraction": 1.5}})";
  const auto bad = run({"compare", "--params", params});
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("eol.recycle_fraction") != std::string::npos);
  CHECK(run({"compare", "--params", (dir / "missing.json").string()}).exit_code == 1);
  CHECK(run({"compare"}, scratch("oops.json", "{oops")).exit_code == 1);
  // --params wins over the environment.
  CHECK(run({"compare", "--params", scratch("ok.json", "{}")}, scratch("oops.json", "{oops")).exit_code == 0);

  const auto out = (dir / "o.csv").string();
  const auto w = run({"compare", "--domain", "DNN", "--out", out});
  CHECK(w.exit_code == 0);
  CHECK(w.out.empty());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  auto without_command = [](const std::string& text) {
    std::string kept;
    for (const auto& l : lines(text)) {
      if (l.rfind("# command:", 0) != 0) kept += l + "\n";
    }
    return kept;
  };
  CHECK(without_command(ss.str()) == without_command(run({"compare", "--domain", "DNN"}).out));
  std::filesystem::remove_all(dir);
}

TEST_CASE("usage errors") {
  CHECK(run({}).exit_code == 1);
  CHECK(run({"frobnicate"}).exit_code == 1);
  CHECK(run({"compare", "--apps", "-2"}).exit_code == 1);
  CHECK(run({"compare", "--format", "xml"}).exit_code == 1);
  CHECK(run({"estimate"}).exit_code == 1);
}

}
