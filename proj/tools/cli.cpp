#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "greenfpga/param_store.hpp"
#include "greenfpga/report.hpp"
#include "greenfpga/scenario.hpp"

namespace greenfpga::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kTool = "greenfpga";

// Raised when an emitted breakdown fails the closure check.
class Inconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string params_path;
  std::string nodes_path;
  std::string out_path;
  std::string format = "tabular";
};

struct ScenarioFlags {
  std::string domain = "DNN";
  std::string testcase;
  std::optional<double> apps;
  std::optional<double> lifetime;
  std::optional<double> years;
  std::optional<double> volume;
  std::optional<double> horizon;
  std::optional<double> area_ratio;
  std::optional<double> power_ratio;
  std::optional<double> duty;
  std::vector<std::string> sweeps;
  std::optional<double> step;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParameterSet resolve_params(const Common& c, const std::optional<std::string>& env) {
  std::string path = c.params_path;
  if (path.empty() && env) path = *env;
  ParameterSet p = path.empty() ? bundled_defaults() : load_parameters(read_file(path));
  if (!c.nodes_path.empty()) p = with_node_csv(std::move(p), read_file(c.nodes_path));
  return p;
}

std::int64_t as_count(double v, const std::string& flag, std::int64_t min) {
  if (!std::isfinite(v) || v != std::floor(v) || v < static_cast<double>(min) || v > 9.0e15) {
    throw ValidationError(flag, "expected an integer >= " + std::to_string(min));
  }
  return static_cast<std::int64_t>(v);
}

Duration as_years(double v, const std::string& flag, bool allow_zero) {
  if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0)) {
    throw ValidationError(flag, allow_zero ? "must be >= 0 years" : "must be > 0 years");
  }
  return Duration::years(v);
}

// Application lifetime from --lifetime or --years (total, split evenly).
Duration app_lifetime(const ScenarioFlags& f, std::int64_t apps, double fallback_years) {
  if (f.lifetime && f.years) throw ValidationError("--years", "give either --lifetime or --years");
  if (f.years) return as_years(*f.years / static_cast<double>(apps), "--years", false);
  if (f.lifetime) return as_years(*f.lifetime, "--lifetime", false);
  return as_years(fallback_years, "options.default_lifetime_years", false);
}

std::string known_names(const std::map<std::string, ChipSpec>& m) {
  std::string out;
  for (const auto& [k, v] : m) out += (out.empty() ? "" : ", ") + k;
  return out;
}

Scenario build_scenario(const ScenarioFlags& f, const ParameterSet& p) {
  if (p.testcases.find_baseline(f.domain) == nullptr) {
    throw ValidationError("--domain", "unknown domain '" + f.domain +
                                          "'; available: " + known_names(p.testcases.baseline_asics));
  }
  Scenario s = default_scenario(p, f.domain);
  if (f.apps) s.num_apps = as_count(*f.apps, "--apps", 1);
  s.app_lifetime = app_lifetime(f, s.num_apps, p.options.default_lifetime_years);
  if (f.volume) s.volume = as_count(*f.volume, "--volume", 0);
  if (f.horizon) s.horizon = as_years(*f.horizon, "--horizon", true);
  if (f.area_ratio || f.power_ratio) {
    DomainRatios r = p.testcases.find_ratios(f.domain) ? *p.testcases.find_ratios(f.domain) : DomainRatios{};
    if (!f.area_ratio || !f.power_ratio) {
      if (p.testcases.find_ratios(f.domain) == nullptr) {
        throw ValidationError("--area-ratio", "custom ratios need both --area-ratio and --power-ratio");
      }
    }
    if (f.area_ratio) r.area_ratio = *f.area_ratio;
    if (f.power_ratio) r.power_ratio = *f.power_ratio;
    if (!(r.area_ratio > 0.0) || !std::isfinite(r.area_ratio)) throw ValidationError("--area-ratio", "must be > 0");
    if (!(r.power_ratio >= 0.0) || !std::isfinite(r.power_ratio)) throw ValidationError("--power-ratio", "must be >= 0");
    s.ratios = r;
  }
  if (f.duty) {
    if (!(*f.duty >= 0.0 && *f.duty <= 1.0)) throw ValidationError("--duty", "must lie in [0, 1]");
    s.duty_cycle = *f.duty;
  }
  return s;
}

EchoLines scenario_echo(const Scenario& s, const ParameterSet& p) {
  const DomainRatios r = s.ratios ? *s.ratios : *p.testcases.find_ratios(s.domain);
  EchoLines e = {
      {"domain", s.domain},
      {"apps", std::to_string(s.num_apps)},
      {"app_lifetime_years", fmt6(s.app_lifetime.years())},
      {"volume", std::to_string(s.volume)},
      {"horizon_years", s.horizon ? fmt6(s.horizon->years()) : "none"},
      {"area_ratio", fmt6(r.area_ratio)},
      {"power_ratio", fmt6(r.power_ratio)},
      {"duty_cycle", fmt6(s.duty_cycle.value_or(p.operation.duty_cycle))},
  };
  return e;
}

json scenario_json(const Scenario& s, const ParameterSet& p) {
  const DomainRatios r = s.ratios ? *s.ratios : *p.testcases.find_ratios(s.domain);
  json j;
  j["domain"] = s.domain;
  j["apps"] = s.num_apps;
  j["app_lifetime_years"] = s.app_lifetime.years();
  j["volume"] = s.volume;
  j["horizon_years"] = s.horizon ? json(s.horizon->years()) : json(nullptr);
  j["area_ratio"] = r.area_ratio;
  j["power_ratio"] = r.power_ratio;
  j["duty_cycle"] = s.duty_cycle.value_or(p.operation.duty_cycle);
  return j;
}

json breakdown_json(const CfpBreakdown& b) {
  json j;
  const auto c = b.components_kg();
  for (std::size_t i = 0; i < c.size(); ++i) j[std::string(CfpBreakdown::kComponentNames[i])] = c[i];
  j["embodied"] = b.embodied().kg();
  j["deployment"] = (b.operational + b.app_dev).kg();
  j["total"] = b.total().kg();
  return j;
}

void require_closure(const CfpBreakdown& b, const ParameterSet& p, std::string_view what) {
  if (!closes(b, p.options.closure_tolerance)) {
    throw Inconsistency("breakdown closure violated for " + std::string(what));
  }
}

struct Emitted {
  EchoLines echo;
  std::string table;
  json results;
};

std::string invocation_line(const std::vector<std::string>& args) {
  std::string out = std::string(kTool);
  for (const auto& a : args) out += " " + a;
  return out;
}

std::string render(const Common& c, const std::vector<std::string>& args, std::string_view command,
                   const ParameterSet& p, const Emitted& e, const json& scenario) {
  if (c.format == "record") {
    json j;
    j["tool"] = kTool;
    j["version"] = GREENFPGA_VERSION;
    j["command"] = command;
    j["invocation"] = args;
    j["scenario"] = scenario;
    j["results"] = e.results;
    j["parameters"] = json::parse(serialize(p));
    j["provenance"] = j["parameters"]["provenance"];
    return j.dump(2) + "\n";
  }
  EchoLines head = {{"tool", std::string(kTool) + " " + GREENFPGA_VERSION},
                    {"command", invocation_line(args)}};
  head.insert(head.end(), e.echo.begin(), e.echo.end());
  head.push_back({"parameters", json::parse(serialize(p)).dump()});
  return echo_block(head) + e.table;
}

Emitted do_estimate(const ScenarioFlags& f, const ParameterSet& p, json& scenario) {
  if (f.testcase.empty()) throw ValidationError("--testcase", "required");
  if (p.testcases.find_chip(f.testcase) == nullptr) {
    throw ValidationError("--testcase", "unknown testcase '" + f.testcase +
                                            "'; available: " + known_names(p.testcases.industry_chips));
  }
  ChipScenario s;
  s.chip = f.testcase;
  s.num_apps = f.apps ? as_count(*f.apps, "--apps", 1) : p.options.default_num_apps;
  s.app_lifetime = app_lifetime(f, s.num_apps, p.options.default_lifetime_years);
  s.volume = f.volume ? as_count(*f.volume, "--volume", 0) : p.options.default_volume;
  if (f.horizon) s.horizon = as_years(*f.horizon, "--horizon", true);

  const PlatformReport r = estimate_chip(s, p);
  require_closure(r.breakdown, p, r.label);
  const ChipSpec& chip = *p.testcases.find_chip(s.chip);

  scenario = {{"testcase", s.chip},
              {"kind", to_string(chip.kind)},
              {"apps", s.num_apps},
              {"app_lifetime_years", s.app_lifetime.years()},
              {"volume", s.volume},
              {"horizon_years", s.horizon ? json(s.horizon->years()) : json(nullptr)}};
  Emitted e;
  e.echo = {{"testcase", s.chip + " (" + std::string(to_string(chip.kind)) + ")"},
            {"apps", std::to_string(s.num_apps)},
            {"app_lifetime_years", fmt6(s.app_lifetime.years())},
            {"volume", std::to_string(s.volume)},
            {"horizon_years", s.horizon ? fmt6(s.horizon->years()) : "none"}};
  e.table = breakdown_table({r});
  e.results = {{"label", r.label}, {"breakdown", breakdown_json(r.breakdown)}};
  return e;
}

Emitted do_compare(const ScenarioFlags& f, const ParameterSet& p, json& scenario) {
  const Scenario s = build_scenario(f, p);
  const Comparison c = evaluate(s, p);
  require_closure(c.fpga, p, "FPGA");
  require_closure(c.asic, p, "ASIC");
  const double tol = p.options.tie_tolerance;

  scenario = scenario_json(s, p);
  Emitted e;
  e.echo = scenario_echo(s, p);
  e.table = breakdown_table({{"FPGA", c.fpga}, {"ASIC", c.asic}});
  e.table += "# ratio," + fmt6(c.ratio()) + "\n# verdict," + std::string(to_string(verdict(c, tol))) + "\n";
  e.results = {{"fpga", breakdown_json(c.fpga)},
               {"asic", breakdown_json(c.asic)},
               {"ratio", c.ratio()},
               {"verdict", to_string(verdict(c, tol))}};
  return e;
}

struct AxisSpec {
  SweepVariable variable = SweepVariable::NumApps;
  std::vector<double> samples;
};

// VAR[:START:STOP:STEPS[:log|lin]]
AxisSpec parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  const auto var = parts.empty() ? std::nullopt : parse_sweep_variable(parts[0]);
  if (!var) {
    throw ValidationError("--sweep", "unknown variable in '" + text +
                                         "'; expected apps, lifetime, volume or horizon");
  }
  AxisSpec a{*var, {}};
  if (parts.size() == 1) {
    a.samples = default_range(*var);
    return a;
  }
  if (parts.size() != 4 && parts.size() != 5) {
    throw ValidationError("--sweep", "expected VAR:START:STOP:STEPS[:log|lin], got '" + text + "'");
  }
  double lo = 0.0;
  double hi = 0.0;
  double n = 0.0;
  try {
    lo = std::stod(parts[1]);
    hi = std::stod(parts[2]);
    n = std::stod(parts[3]);
  } catch (const std::exception&) {
    throw ValidationError("--sweep", "bad number in '" + text + "'");
  }
  if (!(n >= 1.0) || n != std::floor(n) || n > 1.0e6) {
    throw ValidationError("--sweep", "STEPS must be a positive integer");
  }
  const bool log_spaced = parts.size() == 5 ? parts[4] == "log" : *var == SweepVariable::AppVolume;
  if (parts.size() == 5 && parts[4] != "log" && parts[4] != "lin") {
    throw ValidationError("--sweep", "spacing must be 'log' or 'lin'");
  }
  if (log_spaced && !(lo > 0.0 && hi > 0.0)) throw ValidationError("--sweep", "log spacing needs positive bounds");
  const auto count = static_cast<std::size_t>(n);
  a.samples = log_spaced ? log_grid(lo, hi, count) : linear_grid(lo, hi, count);
  if (*var == SweepVariable::NumApps || *var == SweepVariable::AppVolume) {
    for (double& v : a.samples) v = std::round(v);
  }
  return a;
}

Emitted do_sweep(const ScenarioFlags& f, const ParameterSet& p, json& scenario) {
  if (f.sweeps.size() != 1) throw ValidationError("--sweep", "sweep takes exactly one --sweep");
  const Scenario s = build_scenario(f, p);
  const AxisSpec axis = parse_axis(f.sweeps.front());
  const SweepSpec spec{axis.variable, axis.samples, s};
  const auto rows = sweep(spec, p);
  for (const auto& r : rows) {
    require_closure(r.result.fpga, p, "FPGA at " + fmt6(r.value));
    require_closure(r.result.asic, p, "ASIC at " + fmt6(r.value));
  }
  const auto xs = find_crossovers(rows, axis.variable, p.options.tie_tolerance);

  scenario = scenario_json(s, p);
  scenario["sweep"] = {{"variable", to_string(axis.variable)}, {"samples", axis.samples}};
  Emitted e;
  e.echo = scenario_echo(s, p);
  e.echo.push_back({"sweep", std::string(to_string(axis.variable)) + " (" +
                                 std::to_string(axis.samples.size()) + " samples)"});
  e.table = sweep_table(axis.variable, rows, xs);
  json jr = json::array();
  for (const auto& r : rows) {
    jr.push_back({{"value", r.value},
                  {"fpga", breakdown_json(r.result.fpga)},
                  {"asic", breakdown_json(r.result.asic)},
                  {"ratio", r.result.ratio()}});
  }
  json jx = json::array();
  for (const auto& x : xs) {
    jx.push_back({{"kind", to_string(x.kind)},
                  {"value", x.value},
                  {"bracket", {x.bracket.first, x.bracket.second}}});
  }
  e.results = {{"rows", jr}, {"crossovers", jx}};
  return e;
}

Emitted do_heatmap(const ScenarioFlags& f, const ParameterSet& p, json& scenario) {
  if (f.sweeps.size() != 2) throw ValidationError("--sweep", "heatmap takes two --sweep axes (x then y)");
  const Scenario s = build_scenario(f, p);
  const AxisSpec x = parse_axis(f.sweeps[0]);
  const AxisSpec y = parse_axis(f.sweeps[1]);
  const RatioGrid grid = heatmap({x.variable, x.samples}, {y.variable, y.samples}, s, p);
  for (double c : grid.cells) {
    if (!(c > 0.0) || !std::isfinite(c)) throw Inconsistency("heatmap produced a non-positive ratio");
  }

  scenario = scenario_json(s, p);
  scenario["x"] = {{"variable", to_string(x.variable)}, {"samples", x.samples}};
  scenario["y"] = {{"variable", to_string(y.variable)}, {"samples", y.samples}};
  Emitted e;
  e.echo = scenario_echo(s, p);
  e.echo.push_back({"x", std::string(to_string(x.variable))});
  e.echo.push_back({"y", std::string(to_string(y.variable))});
  e.table = heatmap_table(grid);
  json contour = json::array();
  for (const auto& pt : iso_ratio_contour(grid)) contour.push_back({pt.x, pt.y});
  e.results = {{"cells", grid.cells}, {"iso_ratio_1", contour}};
  return e;
}

Emitted do_timeline(const ScenarioFlags& f, const ParameterSet& p, json& scenario) {
  const Scenario s = build_scenario(f, p);
  const Duration horizon =
      s.horizon ? *s.horizon : s.app_lifetime * static_cast<double>(s.num_apps);
  const Duration step = as_years(f.step.value_or(1.0), "--step", false);
  const DomainSetup setup = resolve_domain(s, p);
  std::vector<ApplicationProfile> apps(static_cast<std::size_t>(s.num_apps), setup.app);
  const std::vector<ChipSpec> asics(apps.size(), setup.asic);
  const std::vector<ChipSpec> fpga{setup.fpga};

  std::vector<std::pair<Platform, std::vector<TimelinePoint>>> series = {
      {Platform::Fpga, cumulative_timeline(Platform::Fpga, apps, fpga, p, horizon, step)},
      {Platform::Asic, cumulative_timeline(Platform::Asic, apps, asics, p, horizon, step)}};
  for (const auto& [platform, points] : series) {
    for (const auto& pt : points) require_closure(pt.cumulative, p, std::string(to_string(platform)));
  }

  scenario = scenario_json(s, p);
  scenario["timeline_horizon_years"] = horizon.years();
  scenario["step_years"] = step.years();
  Emitted e;
  e.echo = scenario_echo(s, p);
  e.echo.push_back({"timeline_horizon_years", fmt6(horizon.years())});
  e.echo.push_back({"step_years", fmt6(step.years())});
  e.table = timeline_table(series);
  json jr;
  for (const auto& [platform, points] : series) {
    json arr = json::array();
    for (const auto& pt : points) {
      arr.push_back({{"t_years", pt.time.years()}, {"cumulative", breakdown_json(pt.cumulative)}});
    }
    jr[std::string(to_string(platform))] = arr;
  }
  e.results = jr;
  return e;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--params", c.params_path, "Parameter document (JSON with comments)");
  cmd->add_option("--nodes", c.nodes_path, "Per-node CSV dataset replacing the bundled one");
  cmd->add_option("--out", c.out_path, "Write the output to this file instead of stdout");
  cmd->add_option("--format", c.format, "tabular or record")->check(CLI::IsMember({"tabular", "record"}));
}

void add_scenario(CLI::App* cmd, ScenarioFlags& f) {
  cmd->add_option("--domain", f.domain, "Application domain (DNN, ImgProc, Crypto, ...)");
  cmd->add_option("--apps", f.apps, "Number of sequential applications");
  cmd->add_option("--lifetime", f.lifetime, "Lifetime of each application, years");
  cmd->add_option("--years", f.years, "Total deployment years, split evenly across applications");
  cmd->add_option("--volume", f.volume, "Units deployed per application");
  cmd->add_option("--horizon", f.horizon, "Evaluation horizon, years");
  cmd->add_option("--area-ratio", f.area_ratio, "FPGA:ASIC area ratio override");
  cmd->add_option("--power-ratio", f.power_ratio, "FPGA:ASIC power ratio override");
  cmd->add_option("--duty", f.duty, "Duty cycle override");
}

}  // namespace

Outcome run(const std::vector<std::string>& args, const std::optional<std::string>& env_params) {
  CLI::App app{"Carbon footprint of FPGA vs ASIC platforms", std::string(kTool)};
  app.set_version_flag("--version", std::string(GREENFPGA_VERSION));
  app.require_subcommand(1);

  Common common;
  ScenarioFlags flags;

  auto* estimate = app.add_subcommand("estimate", "Breakdown for one named chip");
  add_common(estimate, common);
  estimate->add_option("--testcase", flags.testcase, "Industry testcase name")->required();
  estimate->add_option("--apps", flags.apps, "Number of sequential applications");
  estimate->add_option("--lifetime", flags.lifetime, "Lifetime of each application, years");
  estimate->add_option("--years", flags.years, "Total deployment years, split evenly across applications");
  estimate->add_option("--volume", flags.volume, "Units deployed per application");
  estimate->add_option("--horizon", flags.horizon, "Evaluation horizon, years");

  auto* compare = app.add_subcommand("compare", "FPGA vs ASIC totals, ratio and verdict");
  add_common(compare, common);
  add_scenario(compare, flags);

  auto* sweep_cmd = app.add_subcommand("sweep", "One-variable sweep with crossover annotations");
  add_common(sweep_cmd, common);
  add_scenario(sweep_cmd, flags);
  sweep_cmd->add_option("--sweep", flags.sweeps, "VAR[:START:STOP:STEPS[:log|lin]]")->required();

  auto* heat = app.add_subcommand("heatmap", "Pairwise FPGA:ASIC ratio grid");
  add_common(heat, common);
  add_scenario(heat, flags);
  heat->add_option("--sweep", flags.sweeps, "x axis then y axis, VAR:START:STOP:STEPS[:log|lin]")
      ->required()
      ->expected(1, 2);

  auto* timeline = app.add_subcommand("timeline", "Cumulative carbon over time for both platforms");
  add_common(timeline, common);
  add_scenario(timeline, flags);
  timeline->add_option("--step", flags.step, "Sampling step, years (default 1)");

  Outcome result;
  std::ostringstream out;
  std::ostringstream err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err) == 0 ? kOk : kValidation;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  try {
    const ParameterSet params = resolve_params(common, env_params);
    json scenario;
    Emitted emitted;
    std::string name;
    if (estimate->parsed()) {
      name = "estimate";
      emitted = do_estimate(flags, params, scenario);
    } else if (compare->parsed()) {
      name = "compare";
      emitted = do_compare(flags, params, scenario);
    } else if (sweep_cmd->parsed()) {
      name = "sweep";
      emitted = do_sweep(flags, params, scenario);
    } else if (heat->parsed()) {
      name = "heatmap";
      emitted = do_heatmap(flags, params, scenario);
    } else {
      name = "timeline";
      emitted = do_timeline(flags, params, scenario);
    }
    const std::string text = render(common, args, name, params, emitted, scenario);
    if (common.out_path.empty()) {
      result.out = text;
    } else {
      std::ofstream f(common.out_path, std::ios::binary);
      f << text;
      if (!f) throw ConfigError("cannot write '" + common.out_path + "'");
    }
  } catch (const Inconsistency& e) {
    result.exit_code = kInconsistent;
    result.err = std::string("inconsistency: ") + e.what() + "\n";
  } catch (const Error& e) {
    result.exit_code = kValidation;
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    result.exit_code = kInconsistent;
    result.err = std::string("internal error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace greenfpga::cli
