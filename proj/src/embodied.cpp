#include "greenfpga/embodied.hpp"

#include <cmath>
#include <string>

namespace greenfpga {

std::string_view to_string(ChipKind kind) {
  return kind == ChipKind::Fpga ? "FPGA" : "ASIC";
}

void check(const ChipSpec& chip) {
  if (!(chip.area_mm2 > 0.0) || !std::isfinite(chip.area_mm2)) {
    throw DomainError("chip '" + chip.name + "': area must be positive");
  }
  if (chip.gates < 1) throw DomainError("chip '" + chip.name + "': gates must be >= 1");
  if (!(chip.chip_lifetime.hours() > 0.0)) {
    throw DomainError("chip '" + chip.name + "': chip lifetime must be positive");
  }
}

const TechNodeParams& lookup_node(const NodeTable& nodes, int node_nm) {
  auto it = nodes.find(node_nm);
  if (it == nodes.end()) {
    throw ConfigError("no manufacturing parameters for " + std::to_string(node_nm) + " nm");
  }
  return it->second;
}

CarbonMass design_cfp(const DesignHouseParams& d, std::int64_t chip_gates) {
  if (chip_gates < 1) throw DomainError("chip gates must be >= 1");
  if (d.total_employees <= 0) throw ConfigError("design.total_employees must be positive");
  if (d.project_employees < 1) throw DomainError("design.project_employees must be >= 1");
  if (d.avg_gates_per_chip < 1) throw DomainError("design.avg_gates_per_chip must be >= 1");

  // kg CO2e per employee-year
  const double per_employee_year =
      energy_to_carbon(d.annual_energy, d.grid_intensity).kg() /
      static_cast<double>(d.total_employees);
  const double gate_ratio =
      static_cast<double>(chip_gates) / static_cast<double>(d.avg_gates_per_chip);
  return CarbonMass::kg(per_employee_year * static_cast<double>(d.project_employees) *
                        gate_ratio * d.project_duration.years());
}

CarbonMass materials_cfp(double area_mm2, const TechNodeParams& node, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw DomainError("recycled material fraction must lie in [0, 1]");
  }
  if (!(node.yield > 0.0 && node.yield <= 1.0)) throw DomainError("yield must lie in (0, 1]");
  const double per_area = rho * node.materials_recycled_per_area_kg +
                          (1.0 - rho) * node.materials_new_per_area_kg;
  return CarbonMass::kg(per_area * area_mm2 / node.yield);
}

CarbonMass manufacturing_cfp(const ChipSpec& chip, const TechNodeParams& node, double rho) {
  const double effective_area = chip.area_mm2 / node.yield;
  const double fab = effective_area * (node.fab_intensity.kg_per_kwh() * node.energy_per_area_kwh +
                                       node.gas_per_area_kg);
  return CarbonMass::kg(fab) + materials_cfp(chip.area_mm2, node, rho);
}

CarbonMass manufacturing_cfp(const ChipSpec& chip, const NodeTable& nodes, double rho) {
  return manufacturing_cfp(chip, lookup_node(nodes, chip.node_nm), rho);
}

double chip_mass_tons(const ChipSpec& chip, const EolParams& e) {
  return e.mass_g_per_mm2 * chip.area_mm2 / kGramsPerTon;
}

CarbonMass eol_cfp(const ChipSpec& chip, const EolParams& e) {
  const double delta = e.recycle_fraction;
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("recycle fraction must lie in [0, 1]");
  const double per_ton = (1.0 - delta) * e.discard_kg_per_ton - delta * e.recycle_credit_kg_per_ton;
  return CarbonMass::credit_kg(per_ton * chip_mass_tons(chip, e));
}

CarbonMass packaging_cfp(const ChipSpec& chip) { return chip.package.carbon_per_package; }

CarbonMass per_unit_embodied(const ChipSpec& chip, const TechNodeParams& node,
                             const EolParams& e, double rho) {
  return manufacturing_cfp(chip, node, rho) + packaging_cfp(chip) + eol_cfp(chip, e);
}

CfpBreakdown embodied_cfp(const ChipSpec& chip, const TechNodeParams& node,
                          std::int64_t n_vol, std::int64_t n_fpga,
                          const DesignHouseParams& d, const EolParams& e, double rho) {
  if (n_vol < 0) throw DomainError("volume must be non-negative");
  if (n_fpga < 1) throw DomainError("FPGA count must be >= 1");
  if (chip.kind == ChipKind::Asic && n_fpga != 1) {
    throw DomainError("an ASIC is its own iso-performance unit; FPGA count must be 1");
  }
  const double units = static_cast<double>(n_vol) * static_cast<double>(n_fpga);

  CfpBreakdown out;
  out.design = design_cfp(d, chip.gates);
  out.manufacturing = manufacturing_cfp(chip, node, rho) * units;
  out.packaging = packaging_cfp(chip) * units;
  out.eol = eol_cfp(chip, e) * units;
  return out;
}

}  // namespace greenfpga
