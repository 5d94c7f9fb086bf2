#pragma once

// Plain-text renderings of engine results. Tabular output is comma separated
// with '#' comment lines; every number is printed with 6 significant digits.

#include <string>
#include <utility>
#include <vector>

#include "greenfpga/breakdown.hpp"
#include "greenfpga/lifecycle.hpp"
#include "greenfpga/scenario.hpp"

namespace greenfpga {

// %.6g
std::string fmt6(double v);

using EchoLines = std::vector<std::pair<std::string, std::string>>;

// "# key: value" lines.
std::string echo_block(const EchoLines& lines);

// component,<label1>,<label2>... with embodied/deployment/total rows.
std::string breakdown_table(const std::vector<PlatformReport>& reports);

// value,fpga_total,asic_total,ratio,fpga_<component>...,asic_<component>...
// followed by "# crossover" annotation rows.
std::string sweep_table(SweepVariable variable, const std::vector<SweepRow>& rows,
                        const std::vector<CrossoverPoint>& crossovers);

// Long form x,y,ratio with iso-ratio annotation rows.
std::string heatmap_table(const RatioGrid& grid);

// platform,t_years,<components>,total
std::string timeline_table(const std::vector<std::pair<Platform, std::vector<TimelinePoint>>>& series);

}  // namespace greenfpga
