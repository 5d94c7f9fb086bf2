#include "greenfpga/deployment.hpp"

#include <array>
#include <cmath>

namespace greenfpga {

namespace {

constexpr std::array<std::pair<AppDomain, std::string_view>, 4> kDomainNames = {{
    {AppDomain::Dnn, "DNN"},
    {AppDomain::ImgProc, "ImgProc"},
    {AppDomain::Crypto, "Crypto"},
    {AppDomain::Custom, "Custom"},
}};

}  // namespace

std::string_view to_string(AppDomain d) {
  for (const auto& [dom, name] : kDomainNames) {
    if (dom == d) return name;
  }
  return "Custom";
}

std::optional<AppDomain> parse_domain(std::string_view name) {
  for (const auto& [dom, n] : kDomainNames) {
    if (n == name) return dom;
  }
  return std::nullopt;
}

void check(const ApplicationProfile& app) {
  if (!(app.lifetime.hours() > 0.0)) {
    throw DomainError("application '" + app.name + "': lifetime must be positive");
  }
  if (app.volume < 0) throw DomainError("application '" + app.name + "': volume must be >= 0");
  if (app.size_gates < 1) throw DomainError("application '" + app.name + "': size must be >= 1 gate");
  if (!(app.duty_cycle >= 0.0 && app.duty_cycle <= 1.0)) {
    throw DomainError("application '" + app.name + "': duty cycle must lie in [0, 1]");
  }
}

CarbonRate operational_cfp_per_year(Power p, const OperationParams& op) {
  if (!(op.duty_cycle >= 0.0 && op.duty_cycle <= 1.0)) {
    throw DomainError("duty cycle must lie in [0, 1]");
  }
  const Energy per_year = p * Duration::hours(op.duty_cycle * kHoursPerYear);
  return CarbonRate::kg_per_year(energy_to_carbon(per_year, op.use_grid_intensity).kg());
}

Duration app_dev_time(ChipKind kind, std::int64_t n_app, std::int64_t n_vol, const AppDevParams& a) {
  if (n_app < 0 || n_vol < 0) throw DomainError("application and volume counts must be >= 0");
  const double apps = static_cast<double>(n_app);
  const double units = static_cast<double>(n_vol);
  if (kind == ChipKind::Asic) return a.asic_t_config * units;
  return (a.t_fe + a.t_be) * apps + a.t_config * units;
}

CarbonMass app_dev_cfp(ChipKind kind, std::int64_t n_app, std::int64_t n_vol, const AppDevParams& a) {
  return energy_to_carbon(a.dev_power * app_dev_time(kind, n_app, n_vol, a), a.dev_grid_intensity);
}

DeploymentCfp deployment_cfp(const ChipSpec& chip, const ApplicationProfile& app,
                             std::int64_t n_fpga, const OperationParams& op,
                             const AppDevParams& a) {
  if (n_fpga < 1) throw DomainError("FPGA count must be >= 1");
  const std::int64_t devices = app.volume * n_fpga;
  const OperationParams app_op{app.duty_cycle, op.use_grid_intensity};
  return {operational_cfp_per_year(chip.peak_power, app_op) * static_cast<double>(devices),
          app_dev_cfp(chip.kind, 1, devices, a)};
}

}  // namespace greenfpga
