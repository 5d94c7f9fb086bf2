#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "greenfpga/application.hpp"
#include "greenfpga/deployment.hpp"
#include "greenfpga/embodied.hpp"

namespace greenfpga {

enum class AppDevScaling {
  OneTime,  // app-dev booked once per application (default)
  Literal,  // app-dev multiplied by the application lifetime in years
};

struct ModelOptions {
  AppDevScaling appdev_scaling = AppDevScaling::OneTime;
  double hours_per_dev_month = kHoursPerMonth;
  double recycled_material_fraction = 0.0;  // rho
  double tie_tolerance = 1e-9;              // relative, FPGA vs ASIC ties
  double closure_tolerance = 1e-9;          // relative, breakdown closure

  // Scenario defaults used when a command omits them.
  std::int64_t default_num_apps = 1;
  double default_lifetime_years = 2.0;
  std::int64_t default_volume = 1'000'000;

  friend bool operator==(const ModelOptions&, const ModelOptions&) = default;
};

struct DomainRatios {
  double area_ratio = 1.0;
  double power_ratio = 1.0;

  friend bool operator==(const DomainRatios&, const DomainRatios&) = default;
};

// Iso-performance testcases: per-domain FPGA:ASIC ratios applied to a
// baseline ASIC, plus named industry chips.
struct TestcaseLibrary {
  std::map<std::string, DomainRatios> domain_ratios;
  std::map<std::string, ChipSpec> baseline_asics;
  std::map<std::string, ChipSpec> industry_chips;
  Duration fpga_lifetime = Duration::years(15.0);

  const DomainRatios* find_ratios(const std::string& domain) const;
  const ChipSpec* find_baseline(const std::string& domain) const;
  const ChipSpec* find_chip(const std::string& name) const;

  friend bool operator==(const TestcaseLibrary&, const TestcaseLibrary&) = default;
};

struct Provenance {
  std::map<std::string, std::string> notes;  // section -> free text

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ParameterSet {
  DesignHouseParams design;
  NodeTable nodes;
  EolParams eol;
  AppDevParams appdev;
  OperationParams operation;
  ModelOptions options;
  TestcaseLibrary testcases;
  Provenance provenance;

  const TechNodeParams& node(int node_nm) const { return lookup_node(nodes, node_nm); }

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

}  // namespace greenfpga
