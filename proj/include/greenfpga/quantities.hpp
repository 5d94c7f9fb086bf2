#pragma once

// Unit-carrying scalars used by every carbon model in the library.
//
// Canonical units:
//   CarbonMass       kg CO2e
//   CarbonRate       kg CO2e per year
//   Energy           kWh
//   CarbonIntensity  kg CO2e per kWh
//   Power            W
//   Duration         h
//
// Values are immutable. Named constructors reject NaN/infinity and negative
// inputs; the only way to obtain a negative CarbonMass is the explicit
// CarbonMass::credit_kg() used by the end-of-life recycling credit.

#include <compare>
#include <string_view>

#include "greenfpga/errors.hpp"

namespace greenfpga {

inline constexpr double kHoursPerYear = 8760.0;
inline constexpr double kHoursPerMonth = kHoursPerYear / 12.0;
inline constexpr double kGramsPerTon = 1.0e6;
inline constexpr double kKgPerMetricTon = 1.0e3;

namespace detail {
double checked_finite(double v, std::string_view what);
double checked_non_negative(double v, std::string_view what);
}  // namespace detail

template <class Derived>
class ScalarQuantity {
 public:
  constexpr double value() const noexcept { return value_; }

  friend Derived operator+(const Derived& a, const Derived& b) {
    return make(a.value_ + b.value_);
  }
  friend Derived operator-(const Derived& a, const Derived& b) {
    return make(a.value_ - b.value_);
  }
  friend Derived operator*(const Derived& a, double k) { return make(a.value_ * k); }
  friend Derived operator*(double k, const Derived& a) { return make(a.value_ * k); }
  friend Derived operator/(const Derived& a, double k) { return make(a.value_ / k); }
  friend double operator/(const Derived& a, const Derived& b) { return a.value_ / b.value_; }
  Derived& operator+=(const Derived& other) {
    value_ = make(value_ + other.value_).value_;
    return static_cast<Derived&>(*this);
  }

  friend constexpr auto operator<=>(const ScalarQuantity&, const ScalarQuantity&) = default;
  friend constexpr bool operator==(const ScalarQuantity&, const ScalarQuantity&) = default;

 protected:
  static Derived make(double v) {
    Derived out;
    if constexpr (Derived::kSigned) {
      out.value_ = detail::checked_finite(v, Derived::kName);
    } else {
      out.value_ = detail::checked_non_negative(v, Derived::kName);
    }
    return out;
  }

  double value_ = 0.0;
};

class CarbonMass : public ScalarQuantity<CarbonMass> {
 public:
  static constexpr bool kSigned = true;
  static constexpr std::string_view kName = "carbon mass";

  static CarbonMass kg(double v) { return make(detail::checked_non_negative(v, kName)); }
  static CarbonMass tonnes(double v) { return kg(v * kKgPerMetricTon); }
  // Signed constructor for net recycling credits.
  static CarbonMass credit_kg(double v) { return make(v); }
  static CarbonMass zero() { return CarbonMass{}; }

  double kg() const noexcept { return value(); }
};

class CarbonRate : public ScalarQuantity<CarbonRate> {
 public:
  static constexpr bool kSigned = false;
  static constexpr std::string_view kName = "carbon rate";

  static CarbonRate kg_per_year(double v) { return make(v); }
  double kg_per_year() const noexcept { return value(); }
};

class Energy : public ScalarQuantity<Energy> {
 public:
  static constexpr bool kSigned = false;
  static constexpr std::string_view kName = "energy";

  static Energy kwh(double v) { return make(v); }
  static Energy gwh(double v) { return make(v * 1.0e6); }
  double kwh() const noexcept { return value(); }
};

class CarbonIntensity : public ScalarQuantity<CarbonIntensity> {
 public:
  static constexpr bool kSigned = false;
  static constexpr std::string_view kName = "carbon intensity";

  static CarbonIntensity kg_per_kwh(double v) { return make(v); }
  static CarbonIntensity g_per_kwh(double v) { return make(v / 1000.0); }
  double kg_per_kwh() const noexcept { return value(); }
};

class Power : public ScalarQuantity<Power> {
 public:
  static constexpr bool kSigned = false;
  static constexpr std::string_view kName = "power";

  static Power watts(double v) { return make(v); }
  double watts() const noexcept { return value(); }
};

class Duration : public ScalarQuantity<Duration> {
 public:
  static constexpr bool kSigned = false;
  static constexpr std::string_view kName = "duration";

  static Duration hours(double v) { return make(v); }
  static Duration years(double v) { return make(detail::checked_non_negative(v, kName) * kHoursPerYear); }
  static Duration months(double v, double hours_per_month = kHoursPerMonth) {
    return make(detail::checked_non_negative(v, kName) * hours_per_month);
  }
  static Duration zero() { return Duration{}; }

  double hours() const noexcept { return value(); }
  double years() const noexcept { return value() / kHoursPerYear; }
};

// kWh x kg/kWh -> kg
CarbonMass energy_to_carbon(Energy e, CarbonIntensity ci);
Duration years_to_hours(double years);
double hours_to_years(Duration d);

// W x h -> kWh
Energy operator*(Power p, Duration d);
Energy operator*(Duration d, Power p);
CarbonMass operator*(Energy e, CarbonIntensity ci);
CarbonMass operator*(CarbonRate r, Duration d);

}  // namespace greenfpga
