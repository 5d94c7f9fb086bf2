#pragma once

// Lifecycle totals for ASIC and FPGA platforms, and cumulative timelines.
//
// Schedule semantics shared by the closed-form totals and the timeline:
//  * applications run back to back, application i over [s_i, s_i + T_i);
//  * with a horizon h, application i runs only if i == 0 or s_i < h, and
//    operation is clipped at h;
//  * ASIC: every application gets freshly designed and manufactured silicon
//    booked at s_i; chip lifetime is ignored;
//  * FPGA: one fleet sized for the largest application is built at t = 0 and
//    re-manufactured (not re-designed) at every k * chip_lifetime strictly
//    before the end of service; the replacement fleet is re-configured for the
//    application running at that instant;
//  * EOL is booked with manufacture, app-dev at application start.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "greenfpga/application.hpp"
#include "greenfpga/breakdown.hpp"
#include "greenfpga/parameters.hpp"

namespace greenfpga {

enum class Platform { Asic, Fpga };

std::string_view to_string(Platform p);

// ceil(app_size / capacity), at least one device.
std::int64_t n_fpga_required(std::int64_t app_size_gates, std::int64_t fpga_capacity_gates);

// Instants k * chip_lifetime, k >= 1, strictly before `service_end`.
std::vector<Duration> fleet_replacement_times(Duration chip_lifetime, Duration service_end);

// Sum of application lifetimes.
Duration total_app_time(std::span<const ApplicationProfile> apps);

// One ASIC spec per application.
CfpBreakdown asic_total_cfp(std::span<const ApplicationProfile> apps,
                            std::span<const ChipSpec> asic_per_app, const ParameterSet& params,
                            std::optional<Duration> horizon = std::nullopt);

CfpBreakdown fpga_total_cfp(std::span<const ApplicationProfile> apps, const ChipSpec& fpga,
                            const ParameterSet& params,
                            std::optional<Duration> horizon = std::nullopt);

struct TimelinePoint {
  Duration time;
  CfpBreakdown cumulative;
};

// Piecewise-linear cumulative carbon sampled every `step` up to `horizon`.
// At each booking instant after t = 0 two points share the same time: the
// value just before the step and just after it. For Platform::Asic `chips`
// holds one spec per application; for Platform::Fpga a single spec.
std::vector<TimelinePoint> cumulative_timeline(Platform platform,
                                               std::span<const ApplicationProfile> apps,
                                               std::span<const ChipSpec> chips,
                                               const ParameterSet& params, Duration horizon,
                                               Duration step);

}  // namespace greenfpga
