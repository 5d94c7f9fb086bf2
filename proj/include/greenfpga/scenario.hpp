#pragma once

// FPGA-vs-ASIC scenario evaluation: 1-D sweeps, crossover detection,
// pairwise ratio heatmaps and component breakdowns.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "greenfpga/breakdown.hpp"
#include "greenfpga/lifecycle.hpp"
#include "greenfpga/parameters.hpp"

namespace greenfpga {

enum class SweepVariable { NumApps, AppLifetime, AppVolume, Horizon };

std::string_view to_string(SweepVariable v);
std::optional<SweepVariable> parse_sweep_variable(std::string_view name);
bool is_integer_variable(SweepVariable v);

// N identical applications of one domain, deployed for `app_lifetime` each.
struct Scenario {
  std::string domain = "DNN";
  std::int64_t num_apps = 1;
  Duration app_lifetime = Duration::years(2.0);
  std::int64_t volume = 1'000'000;
  std::optional<Duration> horizon;
  std::optional<DomainRatios> ratios;  // overrides the library ratios
  std::optional<double> duty_cycle;    // overrides operation.duty_cycle
};

Scenario default_scenario(const ParameterSet& params, std::string domain);

// Returns a copy of `s` with the variable set to `value` (years for
// AppLifetime/Horizon; counts are rounded to the nearest integer).
Scenario with_value(Scenario s, SweepVariable var, double value);
double value_of(const Scenario& s, SweepVariable var);

// Iso-performance pair derived from a domain baseline ASIC.
struct DomainSetup {
  ChipSpec asic;
  ChipSpec fpga;
  ApplicationProfile app;  // template; lifetime/volume filled per scenario
};

DomainSetup resolve_domain(const Scenario& s, const ParameterSet& params);

struct Comparison {
  CfpBreakdown fpga;
  CfpBreakdown asic;

  double ratio() const { return fpga.total().kg() / asic.total().kg(); }
  double difference() const { return fpga.total().kg() - asic.total().kg(); }
};

enum class Verdict { FpgaFavored, AsicFavored, Tie };
std::string_view to_string(Verdict v);

Comparison evaluate(const Scenario& s, const ParameterSet& params);

// Ties (|F - A| <= tol * max(|F|, |A|)) count as FPGA-favored.
bool fpga_favored(const Comparison& c, double tie_tolerance);
Verdict verdict(const Comparison& c, double tie_tolerance);

struct SweepSpec {
  SweepVariable variable = SweepVariable::NumApps;
  std::vector<double> range;
  Scenario fixed;
};

// Throws ValidationError on an empty, unsorted or non-integral range.
void check(const SweepSpec& spec);

struct SweepRow {
  double value = 0.0;
  Comparison result;
};

std::vector<SweepRow> sweep(const SweepSpec& spec, const ParameterSet& params);

// Sample grids. Endpoints are reproduced exactly.
std::vector<double> linear_grid(double start, double stop, std::size_t n);
std::vector<double> log_grid(double start, double stop, std::size_t n);
std::vector<double> default_range(SweepVariable v);

enum class CrossoverKind { A2F, F2A };
std::string_view to_string(CrossoverKind k);

struct CrossoverPoint {
  CrossoverKind kind = CrossoverKind::A2F;
  double value = 0.0;
  std::pair<double, double> bracket;
};

// One crossover per change of the favored platform between adjacent samples.
// Integer variables report the first sample past the change; continuous
// variables interpolate the root of FPGA - ASIC linearly inside the bracket
// (a tie sample is its own root).
std::vector<CrossoverPoint> find_crossovers(const std::vector<SweepRow>& rows,
                                            SweepVariable variable, double tie_tolerance);

struct HeatmapAxis {
  SweepVariable variable = SweepVariable::NumApps;
  std::vector<double> samples;
};

// cells are row-major over y: cell(ix, iy) = cells[iy * xs.size() + ix].
struct RatioGrid {
  SweepVariable x_variable = SweepVariable::NumApps;
  SweepVariable y_variable = SweepVariable::AppVolume;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> cells;

  double at(std::size_t ix, std::size_t iy) const { return cells.at(iy * xs.size() + ix); }
};

RatioGrid heatmap(const HeatmapAxis& x, const HeatmapAxis& y, const Scenario& fixed,
                  const ParameterSet& params);

struct IsoRatioPoint {
  double x = 0.0;
  double y = 0.0;
};

// Ratio-1 crossings along every row of the grid, interpolated in x.
std::vector<IsoRatioPoint> iso_ratio_contour(const RatioGrid& grid);

// Embodied/operational split plus the six components, for either a
// comparison or a single platform.
struct PlatformReport {
  std::string label;
  CfpBreakdown breakdown;
  CarbonMass embodied() const { return breakdown.embodied(); }
  // Operation plus application development.
  CarbonMass deployment() const { return breakdown.operational + breakdown.app_dev; }
};

std::vector<PlatformReport> breakdown_report(const Scenario& s, const ParameterSet& params);

// Single named chip running `num_apps` applications of `app_lifetime` each.
// An FPGA serves every application; an ASIC is rebuilt per application.
struct ChipScenario {
  std::string chip;
  std::int64_t num_apps = 1;
  Duration app_lifetime = Duration::years(1.0);
  std::int64_t volume = 1'000'000;
  std::optional<Duration> horizon;
};

PlatformReport estimate_chip(const ChipScenario& s, const ParameterSet& params);

}  // namespace greenfpga
