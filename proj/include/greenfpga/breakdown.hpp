#pragma once

#include <array>
#include <string_view>

#include "greenfpga/quantities.hpp"

namespace greenfpga {

// Per-component carbon result. Components are stored; totals are derived.
struct CfpBreakdown {
  CarbonMass design;
  CarbonMass manufacturing;
  CarbonMass packaging;
  CarbonMass eol;
  CarbonMass app_dev;
  CarbonMass operational;

  static constexpr std::array<std::string_view, 6> kComponentNames = {
      "design", "manufacturing", "packaging", "eol", "app_dev", "operational"};

  std::array<double, 6> components_kg() const {
    return {design.kg(), manufacturing.kg(), packaging.kg(),
            eol.kg(),    app_dev.kg(),       operational.kg()};
  }

  // design + manufacturing + packaging + eol
  CarbonMass embodied() const { return design + manufacturing + packaging + eol; }
  CarbonMass total() const { return embodied() + app_dev + operational; }

  CfpBreakdown& operator+=(const CfpBreakdown& o) {
    design += o.design;
    manufacturing += o.manufacturing;
    packaging += o.packaging;
    eol += o.eol;
    app_dev += o.app_dev;
    operational += o.operational;
    return *this;
  }
  friend CfpBreakdown operator+(CfpBreakdown a, const CfpBreakdown& b) { return a += b; }
  friend CfpBreakdown operator*(const CfpBreakdown& a, double k) {
    return {a.design * k, a.manufacturing * k, a.packaging * k,
            a.eol * k,    a.app_dev * k,       a.operational * k};
  }
};

// True when total() agrees with the plain component sum within `rel_tol`.
bool closes(const CfpBreakdown& b, double rel_tol = 1e-9);

}  // namespace greenfpga
