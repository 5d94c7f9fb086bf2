#include <doctest.h>

#include <random>

#include "approx.hpp"
#include "fleet_oracle.hpp"
#include "greenfpga/lifecycle.hpp"
#include "greenfpga/param_store.hpp"
#include "greenfpga/report.hpp"
#include "greenfpga/scenario.hpp"

using namespace greenfpga;

namespace {

std::vector<ApplicationProfile> apps_of(const ApplicationProfile& a, int n, double years) {
  std::vector<ApplicationProfile> out(n, a);
  for (auto& x : out) x.lifetime = Duration::years(years);
  return out;
}

DomainSetup setup_for(const std::string& domain, std::int64_t volume = 1000) {
  const auto& p = bundled_defaults();
  Scenario s = default_scenario(p, domain);
  s.volume = volume;
  return resolve_domain(s, p);
}

oracle::App to_oracle(const ApplicationProfile& a) {
  return {a.size_gates, a.lifetime.years(), a.volume, a.duty_cycle};
}

}  // namespace

TEST_SUITE("lifecycle") {

TEST_CASE("fpga count") {
  CHECK(n_fpga_required(4'000'000, 4'000'000) == 1);
  CHECK(n_fpga_required(10'000'000, 4'000'000) == 3);
  CHECK(n_fpga_required(1, 4'000'000) == 1);
  CHECK_THROWS_AS(n_fpga_required(10, 0), DomainError);
}

TEST_CASE("replacement instants") {
  const auto t = fleet_replacement_times(Duration::years(15), Duration::years(45));
  REQUIRE(t.size() == 2);
  CHECK(t[0].years() == 15.0);
  CHECK(t[1].years() == 30.0);
  CHECK(fleet_replacement_times(Duration::years(15), Duration::years(15)).empty());
  CHECK(fleet_replacement_times(Duration::years(15), Duration::years(15.5)).size() == 1);
}

TEST_CASE("asic totals") {
  const auto& p = bundled_defaults();
  const auto s = setup_for("ImgProc");
  const auto one = asic_total_cfp(apps_of(s.app, 1, 2), std::vector<ChipSpec>{s.asic}, p);
  const auto emb = embodied_cfp(s.asic, p.node(10), 1000, 1, p.design, p.eol, 0.2);
  const double rate = deployment_cfp(s.asic, s.app, 1, p.operation, p.appdev).rate.kg_per_year();
  CHECK(rel_close(one.total().kg(), emb.total().kg() + 2 * rate, 1e-12));

  const auto five = asic_total_cfp(apps_of(s.app, 5, 2), std::vector<ChipSpec>(5, s.asic), p);
  CHECK(rel_close(five.total().kg(), 5 * one.total().kg(), 1e-12));
  CHECK(asic_total_cfp({}, {}, p).total().kg() == 0.0);
  CHECK_THROWS_AS(asic_total_cfp(apps_of(s.app, 2, 1), std::vector<ChipSpec>{s.asic}, p), DomainError);
}

TEST_CASE("fpga single application") {
  const auto& p = bundled_defaults();
  const auto s = setup_for("DNN");
  const auto t = fpga_total_cfp(apps_of(s.app, 1, 3), s.fpga, p);
  const auto emb = embodied_cfp(s.fpga, p.node(10), 1000, 1, p.design, p.eol, 0.2);
  const auto dep = deployment_cfp(s.fpga, s.app, 1, p.operation, p.appdev);
  CHECK(rel_close(t.total().kg(), emb.total().kg() + 3 * dep.rate.kg_per_year() + dep.one_time.kg(), 1e-12));
}

TEST_CASE("second fleet generation adds one volume term, not a new design") {
  const auto& p = bundled_defaults();
  const auto s = setup_for("ImgProc");
  const auto apps = apps_of(s.app, 30, 1);
  const auto one_gen = fpga_total_cfp(apps, s.fpga, p, Duration::years(15));
  const auto two_gen = fpga_total_cfp(apps, s.fpga, p, Duration::years(30));
  const double unit = oracle::mfg_kg(p, s.fpga) + 0.15 + oracle::eol_kg(p, s.fpga);
  CHECK(rel_close(two_gen.embodied().kg() - one_gen.embodied().kg(), 1000 * unit, 1e-9));
  CHECK(two_gen.design.kg() == one_gen.design.kg());
}

TEST_CASE("horizon clipping") {
  const auto& p = bundled_defaults();
  const auto s = setup_for("DNN");
  const auto apps = apps_of(s.app, 4, 2);
  const auto full = fpga_total_cfp(apps, s.fpga, p);
  CHECK(rel_close(fpga_total_cfp(apps, s.fpga, p, Duration::years(8)).total().kg(), full.total().kg(), 1e-12));
  CHECK(rel_close(fpga_total_cfp(apps, s.fpga, p, Duration::years(100)).total().kg(), full.total().kg(), 1e-12));
  // At 3 years the third and fourth applications have not started.
  const auto part = fpga_total_cfp(apps, s.fpga, p, Duration::years(3));
  const auto dep = deployment_cfp(s.fpga, s.app, 1, p.operation, p.appdev);
  CHECK(rel_close(part.app_dev.kg(), 2 * dep.one_time.kg(), 1e-12));
  CHECK(rel_close(part.operational.kg(), 3 * dep.rate.kg_per_year(), 1e-12));
}

TEST_CASE("matches the fleet oracle on random scenarios") {
  const auto& base = bundled_defaults();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const char* domains[] = {"DNN", "ImgProc", "Crypto"};
  for (int k = 0; k < 5; ++k) {
    ParameterSet p = base;
    if (k % 2) p.options.appdev_scaling = AppDevScaling::Literal;
    const auto s = setup_for(domains[k % 3]);
    ChipSpec fpga = s.fpga;
    fpga.chip_lifetime = Duration::years(2 + 10 * u(rng));
    std::vector<ApplicationProfile> apps;
    std::vector<oracle::App> oapps;
    std::vector<ChipSpec> asics;
    const int n = 1 + k;
    for (int i = 0; i < n; ++i) {
      ApplicationProfile a = s.app;
      a.lifetime = Duration::years(0.2 + 5 * u(rng));
      a.volume = static_cast<std::int64_t>(1000 * u(rng));
      a.size_gates = 1 + static_cast<std::int64_t>(2.5 * fpga.gates * u(rng));
      a.duty_cycle = u(rng);
      apps.push_back(a);
      oapps.push_back(to_oracle(a));
      ChipSpec c = s.asic;
      c.area_mm2 *= 0.5 + u(rng);
      c.gates = a.size_gates;
      asics.push_back(c);
    }
    const auto f = fpga_total_cfp(apps, fpga, p);
    const auto a = asic_total_cfp(apps, asics, p);
    CHECK(rel_close(f.total().kg(), oracle::fpga(oapps, fpga, p).total(), 1e-9));
    CHECK(rel_close(a.total().kg(), oracle::asic(oapps, asics, p).total(), 1e-9));
  }
}

TEST_CASE("identical platforms differ by the recurring embodied carbon") {
  ParameterSet p = bundled_defaults();
  p.appdev.t_fe = Duration::zero();
  p.appdev.t_be = Duration::zero();
  p.appdev.t_config = Duration::zero();
  Scenario s = default_scenario(p, "DNN");
  s.ratios = DomainRatios{1.0, 1.0};
  s.volume = 5000;
  s.app_lifetime = Duration::years(1);
  for (std::int64_t n = 2; n <= 8; ++n) {
    s.num_apps = n;
    const auto setup = resolve_domain(s, p);
    const auto c = evaluate(s, p);
    const double emb = embodied_cfp(setup.asic, p.node(10), 5000, 1, p.design, p.eol, 0.2).total().kg();
    CHECK(c.fpga.total().kg() < c.asic.total().kg());
    CHECK(rel_close(c.asic.total().kg() - c.fpga.total().kg(), (n - 1) * emb, 1e-9));
  }
}

TEST_CASE("totals are monotone in volume, lifetime, duty and application count") {
  const auto& p = bundled_defaults();
  Scenario s = default_scenario(p, "ImgProc");
  auto totals = [&](const Scenario& x) {
    const auto c = evaluate(x, p);
    return std::pair{c.fpga.total().kg(), c.asic.total().kg()};
  };
  auto prev = totals(s);
  for (std::int64_t v : {1000, 20000, 300000, 4000000}) {
    Scenario x = s;
    x.volume = v;
    const auto now = totals(x);
    if (v > 1000) CHECK(now.first >= prev.first);
    if (v > 1000) CHECK(now.second >= prev.second);
    prev = now;
  }
  prev = totals(s);
  for (double y : {0.5, 1.0, 4.0, 9.0, 20.0}) {
    Scenario x = s;
    x.app_lifetime = Duration::years(y);
    const auto now = totals(x);
    if (y > 0.5) CHECK(now.first >= prev.first);
    if (y > 0.5) CHECK(now.second >= prev.second);
    prev = now;
  }
  prev = totals(s);
  for (double d : {0.0, 0.3, 0.9}) {
    Scenario x = s;
    x.duty_cycle = d;
    const auto now = totals(x);
    if (d > 0.0) CHECK(now.first >= prev.first);
    if (d > 0.0) CHECK(now.second >= prev.second);
    prev = now;
  }
  prev = totals(s);
  for (std::int64_t n = 2; n <= 12; ++n) {
    Scenario x = s;
    x.num_apps = n;
    const auto now = totals(x);
    CHECK(now.first >= prev.first);
    CHECK(now.second >= prev.second);
    prev = now;
  }
}

TEST_CASE("timeline agrees with the closed form") {
  const auto& p = bundled_defaults();
  for (const char* d : {"DNN", "ImgProc", "Crypto"}) {
    const auto s = setup_for(d);
    const auto apps = apps_of(s.app, 7, 3.5);
    const std::vector<ChipSpec> asics(apps.size(), s.asic);
    const std::vector<ChipSpec> fpga{s.fpga};
    for (double h : {2.0, 15.0, 24.5, 40.0}) {
      const auto ft = cumulative_timeline(Platform::Fpga, apps, fpga, p, Duration::years(h), Duration::years(0.7));
      const auto at = cumulative_timeline(Platform::Asic, apps, asics, p, Duration::years(h), Duration::years(0.7));
      CHECK(rel_close(ft.back().cumulative.total().kg(), fpga_total_cfp(apps, s.fpga, p, Duration::years(h)).total().kg(), 1e-9));
      CHECK(rel_close(at.back().cumulative.total().kg(), asic_total_cfp(apps, asics, p, Duration::years(h)).total().kg(), 1e-9));
      for (std::size_t i = 1; i < ft.size(); ++i) {
        CHECK(ft[i].time >= ft[i - 1].time);
        CHECK(ft[i].cumulative.total().kg() >= ft[i - 1].cumulative.total().kg());
        CHECK(closes(ft[i].cumulative));
      }
    }
  }
}

TEST_CASE("zero horizon timeline") {
  const auto& p = bundled_defaults();
  const auto s = setup_for("ImgProc");
  const auto apps = apps_of(s.app, 3, 1);
  const std::vector<ChipSpec> fpga{s.fpga};
  const std::vector<ChipSpec> asics(3, s.asic);
  const auto f = cumulative_timeline(Platform::Fpga, apps, fpga, p, Duration::zero(), Duration::years(1));
  const auto a = cumulative_timeline(Platform::Asic, apps, asics, p, Duration::zero(), Duration::years(1));
  REQUIRE(f.size() == 1);
  REQUIRE(a.size() == 1);
  const auto emb_f = embodied_cfp(s.fpga, p.node(10), 1000, 1, p.design, p.eol, 0.2);
  const auto emb_a = embodied_cfp(s.asic, p.node(10), 1000, 1, p.design, p.eol, 0.2);
  CHECK(rel_close(f[0].cumulative.embodied().kg(), emb_f.embodied().kg(), 1e-12));
  CHECK(f[0].cumulative.operational.kg() == 0.0);
  CHECK(rel_close(a[0].cumulative.total().kg(), emb_a.total().kg(), 1e-12));
  CHECK_THROWS_AS(cumulative_timeline(Platform::Fpga, apps, fpga, p, Duration::years(1), Duration::zero()),
                  DomainError);
}

TEST_CASE("breakdown closure") {
  CfpBreakdown b;
  b.design = CarbonMass::kg(1e6);
  b.eol = CarbonMass::credit_kg(-3.5);
  b.operational = CarbonMass::kg(1e-3);
  CHECK(closes(b));
  const auto& p = bundled_defaults();
  Scenario s = default_scenario(p, "DNN");
  s.num_apps = 10;
  const auto c = evaluate(s, p);
  CHECK(closes(c.fpga));
  CHECK(closes(c.asic));
}

}
