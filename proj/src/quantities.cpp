#include "greenfpga/quantities.hpp"

#include <cmath>
#include <string>

namespace greenfpga {
namespace detail {

double checked_finite(double v, std::string_view what) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite");
  }
  return v;
}

double checked_non_negative(double v, std::string_view what) {
  checked_finite(v, what);
  if (v < 0.0) {
    throw DomainError(std::string(what) + " must be non-negative, got " + std::to_string(v));
  }
  return v;
}

}  // namespace detail

CarbonMass energy_to_carbon(Energy e, CarbonIntensity ci) {
  return CarbonMass::kg(e.kwh() * ci.kg_per_kwh());
}

Duration years_to_hours(double years) {
  if (!(years >= 0.0)) throw DomainError("years must be non-negative");
  return Duration::years(years);
}

double hours_to_years(Duration d) { return d.hours() / kHoursPerYear; }

Energy operator*(Power p, Duration d) { return Energy::kwh(p.watts() * d.hours() / 1000.0); }
Energy operator*(Duration d, Power p) { return p * d; }
CarbonMass operator*(Energy e, CarbonIntensity ci) { return energy_to_carbon(e, ci); }
CarbonMass operator*(CarbonRate r, Duration d) { return CarbonMass::kg(r.kg_per_year() * d.years()); }

}  // namespace greenfpga
