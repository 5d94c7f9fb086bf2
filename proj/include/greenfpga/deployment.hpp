#pragma once

// Deployment carbon: field operation (a per-year rate) and application
// development (a one-time cost per application).

#include <cstdint>

#include "greenfpga/application.hpp"
#include "greenfpga/embodied.hpp"
#include "greenfpga/quantities.hpp"

namespace greenfpga {

struct AppDevParams {
  Duration t_fe;           // RTL + verification, per application
  Duration t_be;           // synthesis / place / route, per application
  Duration t_config;       // field configuration, per deployed FPGA
  Duration asic_t_config;  // per deployed ASIC (firmware load); zero by default
  Power dev_power;
  CarbonIntensity dev_grid_intensity;

  friend bool operator==(const AppDevParams&, const AppDevParams&) = default;
};

struct OperationParams {
  double duty_cycle = 0.0;
  CarbonIntensity use_grid_intensity;

  friend bool operator==(const OperationParams&, const OperationParams&) = default;
};

CarbonRate operational_cfp_per_year(Power p, const OperationParams& op);

// FPGA: n_app * (T_FE + T_BE) + n_vol * T_config.
// ASIC: front/back-end effort lives in the design phase, so only
// n_vol * asic_t_config remains.
Duration app_dev_time(ChipKind kind, std::int64_t n_app, std::int64_t n_vol, const AppDevParams& a);

CarbonMass app_dev_cfp(ChipKind kind, std::int64_t n_app, std::int64_t n_vol, const AppDevParams& a);

struct DeploymentCfp {
  CarbonRate rate;      // multiplied by the application lifetime
  CarbonMass one_time;  // booked once per application
};

// `n_fpga` devices host each application instance; the application's own
// duty cycle overrides op.duty_cycle.
DeploymentCfp deployment_cfp(const ChipSpec& chip, const ApplicationProfile& app,
                             std::int64_t n_fpga, const OperationParams& op,
                             const AppDevParams& a);

}  // namespace greenfpga
