#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "approx.hpp"
#include "greenfpga/quantities.hpp"

using namespace greenfpga;

TEST_SUITE("quantities") {

TEST_CASE("energy to carbon") {
  CHECK(energy_to_carbon(Energy::kwh(0), CarbonIntensity::kg_per_kwh(0.4)).kg() == 0.0);
  // 306.6 * 0.4
  CHECK(rel_close(energy_to_carbon(Energy::kwh(306.6), CarbonIntensity::kg_per_kwh(0.4)).kg(), 122.64, 1e-9));
  CHECK(rel_close(energy_to_carbon(Energy::gwh(7.3), CarbonIntensity::kg_per_kwh(0.4)).kg(), 2.92e6, 1e-9));
  CHECK(rel_close((Energy::kwh(10) * CarbonIntensity::g_per_kwh(250)).kg(), 2.5, 1e-12));
}

TEST_CASE("years to hours") {
  CHECK(years_to_hours(0).hours() == 0.0);
  CHECK(years_to_hours(1).hours() == 8760.0);
  CHECK(years_to_hours(2.5).hours() == 21900.0);
  CHECK_THROWS_AS(years_to_hours(-1), DomainError);
  CHECK(Duration::months(1).hours() == 730.0);
  CHECK(Duration::months(2, 160).hours() == 320.0);
}

TEST_CASE("power times duration") {
  CHECK((Power::watts(500) * Duration::hours(10)).kwh() == doctest::Approx(5.0));
  CHECK((CarbonRate::kg_per_year(100) * Duration::years(0.5)).kg() == doctest::Approx(50.0));
}

TEST_CASE("constructors reject bad values") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(CarbonMass::kg(-1), DomainError);
  CHECK_THROWS_AS(CarbonMass::kg(nan), DomainError);
  CHECK_THROWS_AS(Energy::kwh(inf), DomainError);
  CHECK_THROWS_AS(Power::watts(-0.5), DomainError);
  CHECK_THROWS_AS(Duration::hours(nan), DomainError);
  CHECK_THROWS_AS(CarbonIntensity::kg_per_kwh(-0.1), DomainError);
  CHECK(CarbonMass::credit_kg(-3).kg() == -3.0);
  CHECK_THROWS_AS(CarbonMass::credit_kg(nan), DomainError);
  // Unsigned quantities cannot go negative through arithmetic either.
  CHECK_THROWS_AS(Power::watts(1) - Power::watts(2), DomainError);
  CHECK((CarbonMass::kg(1) - CarbonMass::kg(2)).kg() == -1.0);
}

TEST_CASE("round trip years/hours") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  for (int i = 0; i < 1000; ++i) {
    const double y = u(rng);
    CHECK(rel_close(hours_to_years(years_to_hours(y)), y, 1e-12));
  }
}

TEST_CASE("energy_to_carbon is bilinear") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1e6);
  std::uniform_real_distribution<double> c(0.0, 2.0);
  std::uniform_real_distribution<double> k(0.0, 50.0);
  for (int i = 0; i < 500; ++i) {
    const double e = u(rng), ci = c(rng), s = k(rng);
    const double base = energy_to_carbon(Energy::kwh(e), CarbonIntensity::kg_per_kwh(ci)).kg();
    CHECK(rel_close(energy_to_carbon(Energy::kwh(e * s), CarbonIntensity::kg_per_kwh(ci)).kg(), base * s, 1e-12));
    CHECK(rel_close(energy_to_carbon(Energy::kwh(e), CarbonIntensity::kg_per_kwh(ci * s)).kg(), base * s, 1e-12));
  }
}

}
