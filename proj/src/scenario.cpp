#include "greenfpga/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace greenfpga {

namespace {

constexpr std::array<std::pair<SweepVariable, std::string_view>, 4> kVariableNames = {{
    {SweepVariable::NumApps, "apps"},
    {SweepVariable::AppLifetime, "lifetime"},
    {SweepVariable::AppVolume, "volume"},
    {SweepVariable::Horizon, "horizon"},
}};

bool is_tie(const Comparison& c, double tol) {
  const double f = c.fpga.total().kg();
  const double a = c.asic.total().kg();
  return std::abs(f - a) <= tol * std::max(std::abs(f), std::abs(a));
}

}  // namespace

std::string_view to_string(SweepVariable v) {
  for (const auto& [var, name] : kVariableNames) {
    if (var == v) return name;
  }
  return "apps";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view name) {
  for (const auto& [var, n] : kVariableNames) {
    if (n == name) return var;
  }
  return std::nullopt;
}

bool is_integer_variable(SweepVariable v) {
  return v == SweepVariable::NumApps;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::FpgaFavored: return "FPGA-favored";
    case Verdict::AsicFavored: return "ASIC-favored";
    case Verdict::Tie: return "tie";
  }
  return "tie";
}

std::string_view to_string(CrossoverKind k) { return k == CrossoverKind::A2F ? "A2F" : "F2A"; }

Scenario default_scenario(const ParameterSet& params, std::string domain) {
  Scenario s;
  s.domain = std::move(domain);
  s.num_apps = params.options.default_num_apps;
  s.app_lifetime = Duration::years(params.options.default_lifetime_years);
  s.volume = params.options.default_volume;
  return s;
}

Scenario with_value(Scenario s, SweepVariable var, double value) {
  switch (var) {
    case SweepVariable::NumApps: s.num_apps = std::llround(value); break;
    case SweepVariable::AppLifetime: s.app_lifetime = Duration::years(value); break;
    case SweepVariable::AppVolume: s.volume = std::llround(value); break;
    case SweepVariable::Horizon: s.horizon = Duration::years(value); break;
  }
  return s;
}

double value_of(const Scenario& s, SweepVariable var) {
  switch (var) {
    case SweepVariable::NumApps: return static_cast<double>(s.num_apps);
    case SweepVariable::AppLifetime: return s.app_lifetime.years();
    case SweepVariable::AppVolume: return static_cast<double>(s.volume);
    case SweepVariable::Horizon:
      return s.horizon ? s.horizon->years() : s.app_lifetime.years() * static_cast<double>(s.num_apps);
  }
  return 0.0;
}

DomainSetup resolve_domain(const Scenario& s, const ParameterSet& params) {
  const TestcaseLibrary& lib = params.testcases;
  const ChipSpec* baseline = lib.find_baseline(s.domain);
  if (baseline == nullptr) throw ConfigError("no baseline ASIC for domain '" + s.domain + "'");
  DomainRatios ratios;
  if (s.ratios) {
    ratios = *s.ratios;
  } else if (const DomainRatios* r = lib.find_ratios(s.domain)) {
    ratios = *r;
  } else {
    throw ConfigError("no FPGA:ASIC ratios for domain '" + s.domain + "'");
  }
  if (!(ratios.area_ratio > 0.0) || !(ratios.power_ratio >= 0.0)) {
    throw DomainError("domain ratios must be positive");
  }

  DomainSetup out;
  out.asic = *baseline;
  out.asic.kind = ChipKind::Asic;
  out.fpga = *baseline;
  out.fpga.name = s.domain + "-FPGA";
  out.fpga.kind = ChipKind::Fpga;
  out.fpga.area_mm2 = baseline->area_mm2 * ratios.area_ratio;
  out.fpga.peak_power = baseline->peak_power * ratios.power_ratio;
  out.fpga.chip_lifetime = lib.fpga_lifetime;

  out.app.name = s.domain;
  out.app.size_gates = baseline->gates;
  out.app.lifetime = s.app_lifetime;
  out.app.volume = s.volume;
  out.app.duty_cycle = s.duty_cycle.value_or(params.operation.duty_cycle);
  out.app.domain = parse_domain(s.domain).value_or(AppDomain::Custom);
  return out;
}

Comparison evaluate(const Scenario& s, const ParameterSet& params) {
  if (s.num_apps < 1) throw DomainError("a scenario needs at least one application");
  const DomainSetup setup = resolve_domain(s, params);
  std::vector<ApplicationProfile> apps(static_cast<std::size_t>(s.num_apps), setup.app);
  for (std::size_t i = 0; i < apps.size(); ++i) apps[i].name += "#" + std::to_string(i + 1);
  const std::vector<ChipSpec> asics(apps.size(), setup.asic);
  return {fpga_total_cfp(apps, setup.fpga, params, s.horizon),
          asic_total_cfp(apps, asics, params, s.horizon)};
}

bool fpga_favored(const Comparison& c, double tie_tolerance) {
  return is_tie(c, tie_tolerance) || c.difference() < 0.0;
}

Verdict verdict(const Comparison& c, double tie_tolerance) {
  if (is_tie(c, tie_tolerance)) return Verdict::Tie;
  return c.difference() < 0.0 ? Verdict::FpgaFavored : Verdict::AsicFavored;
}

void check(const SweepSpec& spec) {
  const std::string field = "sweep." + std::string(to_string(spec.variable));
  if (spec.range.empty()) throw ValidationError(field, "range is empty");
  for (std::size_t i = 0; i < spec.range.size(); ++i) {
    const double v = spec.range[i];
    if (!std::isfinite(v) || v < 0.0) throw ValidationError(field, "samples must be finite and >= 0");
    if (i > 0 && !(v > spec.range[i - 1])) {
      throw ValidationError(field, "range must be strictly increasing");
    }
  }
  if (spec.variable == SweepVariable::NumApps) {
    for (double v : spec.range) {
      if (v < 1.0 || v != std::floor(v)) {
        throw ValidationError(field, "application counts must be positive integers");
      }
    }
  }
  if (spec.variable == SweepVariable::AppLifetime && !(spec.range.front() > 0.0)) {
    throw ValidationError(field, "application lifetime must be positive");
  }
}

std::vector<SweepRow> sweep(const SweepSpec& spec, const ParameterSet& params) {
  check(spec);
  std::vector<SweepRow> rows;
  rows.reserve(spec.range.size());
  for (double v : spec.range) {
    rows.push_back({v, evaluate(with_value(spec.fixed, spec.variable, v), params)});
  }
  return rows;
}

std::vector<double> linear_grid(double start, double stop, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {start};
  std::vector<double> out(n);
  const double last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i);
    out[i] = (start * (last - k) + stop * k) / last;
  }
  return out;
}

std::vector<double> log_grid(double start, double stop, std::size_t n) {
  if (!(start > 0.0) || !(stop > 0.0)) throw DomainError("log grid bounds must be positive");
  std::vector<double> out = linear_grid(std::log10(start), std::log10(stop), n);
  for (double& v : out) v = std::pow(10.0, v);
  if (!out.empty()) {
    out.front() = start;
    out.back() = stop;
  }
  return out;
}

std::vector<double> default_range(SweepVariable v) {
  switch (v) {
    case SweepVariable::NumApps: return linear_grid(1.0, 8.0, 8);
    case SweepVariable::AppLifetime: return linear_grid(0.2, 2.5, 24);
    case SweepVariable::AppVolume: return log_grid(1e3, 1e6, 25);
    case SweepVariable::Horizon: return linear_grid(1.0, 45.0, 45);
  }
  return {};
}

std::vector<CrossoverPoint> find_crossovers(const std::vector<SweepRow>& rows,
                                            SweepVariable variable, double tie_tolerance) {
  std::vector<CrossoverPoint> out;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const SweepRow& l = rows[i];
    const SweepRow& r = rows[i + 1];
    const bool fl = fpga_favored(l.result, tie_tolerance);
    const bool fr = fpga_favored(r.result, tie_tolerance);
    if (fl == fr) continue;

    CrossoverPoint p;
    p.kind = fr ? CrossoverKind::A2F : CrossoverKind::F2A;
    p.bracket = {l.value, r.value};
    if (is_integer_variable(variable)) {
      p.value = r.value;
    } else if (is_tie(l.result, tie_tolerance)) {
      p.value = l.value;
    } else if (is_tie(r.result, tie_tolerance)) {
      p.value = r.value;
    } else {
      const double dl = l.result.difference();
      const double dr = r.result.difference();
      p.value = l.value + (r.value - l.value) * dl / (dl - dr);
      p.value = std::clamp(p.value, l.value, r.value);
    }
    out.push_back(p);
  }
  return out;
}

RatioGrid heatmap(const HeatmapAxis& x, const HeatmapAxis& y, const Scenario& fixed,
                  const ParameterSet& params) {
  if (x.variable == y.variable) {
    throw ValidationError("heatmap", "axes must sweep different variables");
  }
  check(SweepSpec{x.variable, x.samples, fixed});
  check(SweepSpec{y.variable, y.samples, fixed});

  RatioGrid grid{x.variable, y.variable, x.samples, y.samples, {}};
  grid.cells.reserve(x.samples.size() * y.samples.size());
  for (double yv : y.samples) {
    const Scenario row = with_value(fixed, y.variable, yv);
    for (double xv : x.samples) {
      grid.cells.push_back(evaluate(with_value(row, x.variable, xv), params).ratio());
    }
  }
  return grid;
}

std::vector<IsoRatioPoint> iso_ratio_contour(const RatioGrid& grid) {
  std::vector<IsoRatioPoint> out;
  for (std::size_t iy = 0; iy < grid.ys.size(); ++iy) {
    for (std::size_t ix = 0; ix + 1 < grid.xs.size(); ++ix) {
      const double a = grid.at(ix, iy) - 1.0;
      const double b = grid.at(ix + 1, iy) - 1.0;
      if ((a <= 0.0) == (b <= 0.0)) continue;
      const double x0 = grid.xs[ix];
      const double x1 = grid.xs[ix + 1];
      out.push_back({x0 + (x1 - x0) * a / (a - b), grid.ys[iy]});
    }
  }
  return out;
}

std::vector<PlatformReport> breakdown_report(const Scenario& s, const ParameterSet& params) {
  const Comparison c = evaluate(s, params);
  return {{s.domain + " FPGA", c.fpga}, {s.domain + " ASIC", c.asic}};
}

PlatformReport estimate_chip(const ChipScenario& s, const ParameterSet& params) {
  const ChipSpec* chip = params.testcases.find_chip(s.chip);
  if (chip == nullptr) throw ConfigError("unknown testcase '" + s.chip + "'");
  if (s.num_apps < 1) throw DomainError("at least one application is required");

  ApplicationProfile app;
  app.name = s.chip;
  app.size_gates = chip->gates;
  app.lifetime = s.app_lifetime;
  app.volume = s.volume;
  app.duty_cycle = params.operation.duty_cycle;
  std::vector<ApplicationProfile> apps(static_cast<std::size_t>(s.num_apps), app);

  if (chip->kind == ChipKind::Fpga) {
    return {chip->name, fpga_total_cfp(apps, *chip, params, s.horizon)};
  }
  const std::vector<ChipSpec> asics(apps.size(), *chip);
  return {chip->name, asic_total_cfp(apps, asics, params, s.horizon)};
}

}  // namespace greenfpga
