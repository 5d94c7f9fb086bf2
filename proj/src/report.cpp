#include "greenfpga/report.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace greenfpga {

bool closes(const CfpBreakdown& b, double rel_tol) {
  const auto c = b.components_kg();
  double sum = 0.0;
  double scale = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    sum += *it;
    scale += std::abs(*it);
  }
  const double total = b.total().kg();
  if (!std::isfinite(total) || !std::isfinite(sum)) return false;
  return std::abs(total - sum) <= rel_tol * scale;
}

std::string fmt6(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string echo_block(const EchoLines& lines) {
  std::string out;
  for (const auto& [k, v] : lines) out += "# " + k + ": " + v + "\n";
  return out;
}

std::string breakdown_table(const std::vector<PlatformReport>& reports) {
  std::string out = "component";
  for (const auto& r : reports) out += "," + r.label;
  out += "\n";
  auto row = [&](std::string_view name, auto get) {
    out += name;
    for (const auto& r : reports) out += "," + fmt6(get(r));
    out += "\n";
  };
  for (std::size_t i = 0; i < CfpBreakdown::kComponentNames.size(); ++i) {
    row(CfpBreakdown::kComponentNames[i],
        [i](const PlatformReport& r) { return r.breakdown.components_kg()[i]; });
  }
  row("embodied", [](const PlatformReport& r) { return r.embodied().kg(); });
  row("deployment", [](const PlatformReport& r) { return r.deployment().kg(); });
  row("total", [](const PlatformReport& r) { return r.breakdown.total().kg(); });
  return out;
}

std::string sweep_table(SweepVariable variable, const std::vector<SweepRow>& rows,
                        const std::vector<CrossoverPoint>& crossovers) {
  std::string out(to_string(variable));
  out += ",fpga_total,asic_total,ratio";
  for (auto prefix : {"fpga_", "asic_"}) {
    for (auto name : CfpBreakdown::kComponentNames) out += "," + std::string(prefix) + std::string(name);
  }
  out += "\n";
  for (const auto& r : rows) {
    out += fmt6(r.value) + "," + fmt6(r.result.fpga.total().kg()) + "," +
           fmt6(r.result.asic.total().kg()) + "," + fmt6(r.result.ratio());
    for (double c : r.result.fpga.components_kg()) out += "," + fmt6(c);
    for (double c : r.result.asic.components_kg()) out += "," + fmt6(c);
    out += "\n";
  }
  for (const auto& c : crossovers) {
    out += "# crossover," + std::string(to_string(c.kind)) + "," + fmt6(c.value) + ",bracket," +
           fmt6(c.bracket.first) + "," + fmt6(c.bracket.second) + "\n";
  }
  if (crossovers.empty()) out += "# crossover,none\n";
  return out;
}

std::string heatmap_table(const RatioGrid& grid) {
  std::string out = std::string(to_string(grid.x_variable)) + "," +
                    std::string(to_string(grid.y_variable)) + ",ratio\n";
  for (std::size_t iy = 0; iy < grid.ys.size(); ++iy) {
    for (std::size_t ix = 0; ix < grid.xs.size(); ++ix) {
      out += fmt6(grid.xs[ix]) + "," + fmt6(grid.ys[iy]) + "," + fmt6(grid.at(ix, iy)) + "\n";
    }
  }
  for (const auto& p : iso_ratio_contour(grid)) out += "# iso_ratio_1," + fmt6(p.x) + "," + fmt6(p.y) + "\n";
  return out;
}

std::string timeline_table(const std::vector<std::pair<Platform, std::vector<TimelinePoint>>>& series) {
  std::string out = "platform,t_years";
  for (auto name : CfpBreakdown::kComponentNames) out += "," + std::string(name);
  out += ",total\n";
  for (const auto& [platform, points] : series) {
    for (const auto& p : points) {
      out += std::string(to_string(platform)) + "," + fmt6(p.time.years());
      for (double c : p.cumulative.components_kg()) out += "," + fmt6(c);
      out += "," + fmt6(p.cumulative.total().kg()) + "\n";
    }
  }
  return out;
}

}  // namespace greenfpga
