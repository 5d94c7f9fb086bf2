#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "greenfpga/quantities.hpp"

namespace greenfpga {

enum class AppDomain { Dnn, ImgProc, Crypto, Custom };

std::string_view to_string(AppDomain d);
std::optional<AppDomain> parse_domain(std::string_view name);

// One workload deployed on a fleet of chips.
struct ApplicationProfile {
  std::string name;
  std::int64_t size_gates = 1;
  Duration lifetime;
  std::int64_t volume = 1;
  double duty_cycle = 0.0;
  AppDomain domain = AppDomain::Custom;
};

// Throws DomainError on lifetime <= 0, volume < 0, duty outside [0, 1].
// Volume zero is tolerated so that design-only estimates stay expressible.
void check(const ApplicationProfile& app);

}  // namespace greenfpga
