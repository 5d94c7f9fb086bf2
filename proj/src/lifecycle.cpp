#include "greenfpga/lifecycle.hpp"

#include <algorithm>
#include <string>

#include "greenfpga/deployment.hpp"

namespace greenfpga {

namespace {

struct AppRun {
  Duration start;
  Duration run;  // operating time after horizon clipping
};

// Applications that start before the horizon (the first one always does).
std::vector<AppRun> schedule(std::span<const ApplicationProfile> apps,
                             std::optional<Duration> horizon) {
  std::vector<AppRun> runs;
  double t = 0.0;
  for (std::size_t i = 0; i < apps.size(); ++i) {
    check(apps[i]);
    const double len = apps[i].lifetime.hours();
    if (horizon && i > 0 && !(t < horizon->hours())) break;
    double run = len;
    if (horizon) run = std::clamp(horizon->hours() - t, 0.0, len);
    runs.push_back({Duration::hours(t), Duration::hours(run)});
    t += len;
  }
  return runs;
}

CarbonMass scaled_one_time(const DeploymentCfp& dep, Duration run, const ModelOptions& opt) {
  if (opt.appdev_scaling == AppDevScaling::Literal) return dep.one_time * run.years();
  return dep.one_time;
}

CfpBreakdown without_design(CfpBreakdown b) {
  b.design = CarbonMass::zero();
  return b;
}

struct Fleet {
  std::int64_t volume = 0;
  std::int64_t n_fpga = 1;
  std::int64_t devices() const { return volume * n_fpga; }
};

// Largest device requirement among the started applications.
Fleet size_fleet(std::span<const ApplicationProfile> apps, std::size_t started,
                 const ChipSpec& fpga) {
  Fleet fleet;
  for (std::size_t i = 0; i < started; ++i) {
    const Fleet f{apps[i].volume, n_fpga_required(apps[i].size_gates, fpga.gates)};
    if (f.devices() > fleet.devices()) fleet = f;
  }
  if (fleet.devices() == 0 && started > 0) {
    fleet.n_fpga = n_fpga_required(apps[0].size_gates, fpga.gates);
  }
  return fleet;
}

// Index of the application active at instant t, if any.
std::optional<std::size_t> active_app(const std::vector<AppRun>& runs, Duration t) {
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].start <= t && t < runs[i].start + runs[i].run) return i;
  }
  return std::nullopt;
}

Duration service_end(const std::vector<AppRun>& runs) {
  if (runs.empty()) return Duration::zero();
  return runs.back().start + runs.back().run;
}

void check_asic_list(std::span<const ApplicationProfile> apps, std::span<const ChipSpec> asics) {
  if (asics.size() != apps.size()) {
    throw DomainError("one ASIC spec per application is required (" +
                      std::to_string(apps.size()) + " apps, " + std::to_string(asics.size()) +
                      " specs)");
  }
  for (const auto& c : asics) {
    if (c.kind != ChipKind::Asic) throw DomainError("chip '" + c.name + "' is not an ASIC");
  }
}

}  // namespace

std::string_view to_string(Platform p) { return p == Platform::Fpga ? "FPGA" : "ASIC"; }

std::int64_t n_fpga_required(std::int64_t app_size_gates, std::int64_t fpga_capacity_gates) {
  if (fpga_capacity_gates < 1) throw DomainError("FPGA capacity must be >= 1 gate");
  if (app_size_gates < 1) throw DomainError("application size must be >= 1 gate");
  return std::max<std::int64_t>(1, (app_size_gates + fpga_capacity_gates - 1) / fpga_capacity_gates);
}

std::vector<Duration> fleet_replacement_times(Duration chip_lifetime, Duration end) {
  if (!(chip_lifetime.hours() > 0.0)) throw DomainError("chip lifetime must be positive");
  std::vector<Duration> out;
  for (std::int64_t k = 1;; ++k) {
    const Duration t = chip_lifetime * static_cast<double>(k);
    if (!(t < end)) break;
    out.push_back(t);
  }
  return out;
}

Duration total_app_time(std::span<const ApplicationProfile> apps) {
  Duration sum;
  for (const auto& a : apps) sum += a.lifetime;
  return sum;
}

CfpBreakdown asic_total_cfp(std::span<const ApplicationProfile> apps,
                            std::span<const ChipSpec> asic_per_app, const ParameterSet& params,
                            std::optional<Duration> horizon) {
  check_asic_list(apps, asic_per_app);
  const auto runs = schedule(apps, horizon);
  const double rho = params.options.recycled_material_fraction;

  CfpBreakdown total;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const ChipSpec& asic = asic_per_app[i];
    check(asic);
    total += embodied_cfp(asic, params.node(asic.node_nm), apps[i].volume, 1, params.design,
                          params.eol, rho);
    const auto dep = deployment_cfp(asic, apps[i], 1, params.operation, params.appdev);
    total.operational += dep.rate * runs[i].run;
    total.app_dev += scaled_one_time(dep, runs[i].run, params.options);
  }
  return total;
}

CfpBreakdown fpga_total_cfp(std::span<const ApplicationProfile> apps, const ChipSpec& fpga,
                            const ParameterSet& params, std::optional<Duration> horizon) {
  if (fpga.kind != ChipKind::Fpga) throw DomainError("chip '" + fpga.name + "' is not an FPGA");
  check(fpga);
  const auto runs = schedule(apps, horizon);
  if (runs.empty()) return {};
  const double rho = params.options.recycled_material_fraction;
  const TechNodeParams& node = params.node(fpga.node_nm);

  const Fleet fleet = size_fleet(apps, runs.size(), fpga);
  const CfpBreakdown first_generation =
      embodied_cfp(fpga, node, fleet.volume, fleet.n_fpga, params.design, params.eol, rho);
  const auto replacements = fleet_replacement_times(fpga.chip_lifetime, service_end(runs));

  CfpBreakdown total =
      first_generation + without_design(first_generation) * static_cast<double>(replacements.size());

  for (std::size_t i = 0; i < runs.size(); ++i) {
    const std::int64_t n_fpga = n_fpga_required(apps[i].size_gates, fpga.gates);
    const auto dep = deployment_cfp(fpga, apps[i], n_fpga, params.operation, params.appdev);
    total.operational += dep.rate * runs[i].run;
    total.app_dev += scaled_one_time(dep, runs[i].run, params.options);
  }
  for (const Duration t : replacements) {
    if (auto j = active_app(runs, t)) {
      const std::int64_t devices = apps[*j].volume * n_fpga_required(apps[*j].size_gates, fpga.gates);
      total.app_dev += app_dev_cfp(ChipKind::Fpga, 0, devices, params.appdev);
    }
  }
  return total;
}

namespace {

struct Booking {
  Duration time;
  CfpBreakdown delta;
};

struct Accrual {
  Duration start;
  Duration end;
  CarbonRate rate;
};

struct EventPlan {
  std::vector<Booking> bookings;
  std::vector<Accrual> accruals;
};

EventPlan plan_asic(std::span<const ApplicationProfile> apps, std::span<const ChipSpec> asics,
                    const ParameterSet& params, Duration horizon) {
  check_asic_list(apps, asics);
  EventPlan plan;
  const auto runs = schedule(apps, horizon);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    check(asics[i]);
    CfpBreakdown b = embodied_cfp(asics[i], params.node(asics[i].node_nm), apps[i].volume, 1,
                                  params.design, params.eol, params.options.recycled_material_fraction);
    const auto dep = deployment_cfp(asics[i], apps[i], 1, params.operation, params.appdev);
    b.app_dev = scaled_one_time(dep, runs[i].run, params.options);
    plan.bookings.push_back({runs[i].start, b});
    plan.accruals.push_back({runs[i].start, runs[i].start + runs[i].run, dep.rate});
  }
  return plan;
}

EventPlan plan_fpga(std::span<const ApplicationProfile> apps, const ChipSpec& fpga,
                    const ParameterSet& params, Duration horizon) {
  if (fpga.kind != ChipKind::Fpga) throw DomainError("chip '" + fpga.name + "' is not an FPGA");
  check(fpga);
  EventPlan plan;
  const auto runs = schedule(apps, horizon);
  if (runs.empty()) return plan;
  const Fleet fleet = size_fleet(apps, runs.size(), fpga);
  const CfpBreakdown generation =
      embodied_cfp(fpga, params.node(fpga.node_nm), fleet.volume, fleet.n_fpga, params.design,
                   params.eol, params.options.recycled_material_fraction);
  plan.bookings.push_back({Duration::zero(), generation});

  for (std::size_t i = 0; i < runs.size(); ++i) {
    const std::int64_t n_fpga = n_fpga_required(apps[i].size_gates, fpga.gates);
    const auto dep = deployment_cfp(fpga, apps[i], n_fpga, params.operation, params.appdev);
    CfpBreakdown b;
    b.app_dev = scaled_one_time(dep, runs[i].run, params.options);
    plan.bookings.push_back({runs[i].start, b});
    plan.accruals.push_back({runs[i].start, runs[i].start + runs[i].run, dep.rate});
  }
  for (const Duration t : fleet_replacement_times(fpga.chip_lifetime, service_end(runs))) {
    CfpBreakdown b = without_design(generation);
    if (auto j = active_app(runs, t)) {
      const std::int64_t devices = apps[*j].volume * n_fpga_required(apps[*j].size_gates, fpga.gates);
      b.app_dev = app_dev_cfp(ChipKind::Fpga, 0, devices, params.appdev);
    }
    plan.bookings.push_back({t, b});
  }
  return plan;
}

// Cumulative value at t; `inclusive` decides whether bookings at exactly t count.
CfpBreakdown cumulative_at(const EventPlan& plan, Duration t, bool inclusive) {
  CfpBreakdown acc;
  for (const auto& b : plan.bookings) {
    if (b.time < t || (inclusive && b.time == t)) acc += b.delta;
  }
  for (const auto& a : plan.accruals) {
    const double hi = std::min(a.end.hours(), t.hours());
    if (hi > a.start.hours()) acc.operational += a.rate * Duration::hours(hi - a.start.hours());
  }
  return acc;
}

}  // namespace

std::vector<TimelinePoint> cumulative_timeline(Platform platform,
                                               std::span<const ApplicationProfile> apps,
                                               std::span<const ChipSpec> chips,
                                               const ParameterSet& params, Duration horizon,
                                               Duration step) {
  if (!(step.hours() > 0.0)) throw DomainError("timeline step must be positive");
  EventPlan plan;
  if (platform == Platform::Asic) {
    plan = plan_asic(apps, chips, params, horizon);
  } else {
    if (chips.size() != 1) throw DomainError("an FPGA timeline takes exactly one chip spec");
    plan = plan_fpga(apps, chips.front(), params, horizon);
  }

  std::vector<Duration> times;
  for (std::int64_t k = 0;; ++k) {
    const Duration t = step * static_cast<double>(k);
    if (!(t < horizon)) break;
    times.push_back(t);
  }
  times.push_back(horizon);
  for (const auto& b : plan.bookings) {
    if (b.time.hours() > 0.0 && b.time < horizon) times.push_back(b.time);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::vector<TimelinePoint> out;
  out.reserve(times.size() + plan.bookings.size());
  for (const Duration t : times) {
    const bool booked_here =
        t.hours() > 0.0 && std::any_of(plan.bookings.begin(), plan.bookings.end(),
                                       [&](const Booking& b) { return b.time == t; });
    if (booked_here) out.push_back({t, cumulative_at(plan, t, false)});
    out.push_back({t, cumulative_at(plan, t, true)});
  }
  return out;
}

}  // namespace greenfpga
