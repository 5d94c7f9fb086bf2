#pragma once

// Embodied carbon: design, manufacturing (with recycled-material blending),
// packaging and end-of-life, aggregated over a production volume.

#include <cstdint>
#include <map>
#include <string>

#include "greenfpga/breakdown.hpp"
#include "greenfpga/quantities.hpp"

namespace greenfpga {

enum class ChipKind { Asic, Fpga };

std::string_view to_string(ChipKind kind);

// Design-house energy model. `total_employees` normalizes the house's annual
// energy into a per-employee-year carbon rate; `project_employees` is the
// team working on this particular chip.
struct DesignHouseParams {
  Energy annual_energy;
  CarbonIntensity grid_intensity;
  std::int64_t total_employees = 1;
  std::int64_t project_employees = 1;
  std::int64_t avg_gates_per_chip = 1;
  Duration project_duration;

  friend bool operator==(const DesignHouseParams&, const DesignHouseParams&) = default;
};

// Per-node fab coefficients. All per-area terms are per mm^2 of die.
struct TechNodeParams {
  int node_nm = 0;
  double energy_per_area_kwh = 0.0;
  double gas_per_area_kg = 0.0;
  double materials_new_per_area_kg = 0.0;
  double materials_recycled_per_area_kg = 0.0;
  double yield = 1.0;
  CarbonIntensity fab_intensity;

  friend bool operator==(const TechNodeParams&, const TechNodeParams&) = default;
};

using NodeTable = std::map<int, TechNodeParams>;

// End-of-life model. Rates are kg CO2e per metric ton of e-waste.
struct EolParams {
  double recycle_fraction = 0.0;
  double discard_kg_per_ton = 0.0;
  double recycle_credit_kg_per_ton = 0.0;
  double mass_g_per_mm2 = 0.05;

  friend bool operator==(const EolParams&, const EolParams&) = default;
};

struct PackageParams {
  CarbonMass carbon_per_package;

  friend bool operator==(const PackageParams&, const PackageParams&) = default;
};

struct ChipSpec {
  std::string name;
  ChipKind kind = ChipKind::Asic;
  double area_mm2 = 0.0;
  Power peak_power;
  // Gate count for an ASIC; equivalent-gate logic capacity for an FPGA.
  std::int64_t gates = 1;
  int node_nm = 0;
  PackageParams package;
  Duration chip_lifetime;

  friend bool operator==(const ChipSpec&, const ChipSpec&) = default;
};

// Throws DomainError when the chip breaks an invariant.
void check(const ChipSpec& chip);

const TechNodeParams& lookup_node(const NodeTable& nodes, int node_nm);

CarbonMass design_cfp(const DesignHouseParams& d, std::int64_t chip_gates);

// Raw-material sourcing: rho blends recycled and newly extracted material.
CarbonMass materials_cfp(double area_mm2, const TechNodeParams& node, double rho);

// Per manufactured unit: fab energy + direct gases + materials, over yield.
CarbonMass manufacturing_cfp(const ChipSpec& chip, const TechNodeParams& node, double rho);
CarbonMass manufacturing_cfp(const ChipSpec& chip, const NodeTable& nodes, double rho);

// Packaged chip mass in metric tons under the per-area mass model.
double chip_mass_tons(const ChipSpec& chip, const EolParams& e);

// Discard emissions minus the recycling credit; negative means net credit.
CarbonMass eol_cfp(const ChipSpec& chip, const EolParams& e);

CarbonMass packaging_cfp(const ChipSpec& chip);

// Manufacturing + packaging + EOL for one unit.
CarbonMass per_unit_embodied(const ChipSpec& chip, const TechNodeParams& node,
                             const EolParams& e, double rho);

// C_des + n_vol * n_fpga * (C_mfg + C_package + C_EOL), per component.
// n_fpga must be 1 for an ASIC.
CfpBreakdown embodied_cfp(const ChipSpec& chip, const TechNodeParams& node,
                          std::int64_t n_vol, std::int64_t n_fpga,
                          const DesignHouseParams& d, const EolParams& e, double rho);

}  // namespace greenfpga
