#include "greenfpga/param_store.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

namespace greenfpga {

namespace bundled {
std::string_view defaults_json();
std::string_view tech_nodes_csv();
}  // namespace bundled

namespace {

using json = nlohmann::ordered_json;

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

struct Alias {
  std::string_view key;
  std::function<double(double)> to_canonical;
};

// Reads one JSON object, remembering which keys were consumed so that the
// rest can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ValidationError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  bool has(std::string_view key) const { return j_.contains(key); }

  std::optional<double> number(std::string_view key) {
    const json* v = take(key);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number()) throw ValidationError(join(path_, key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) throw ValidationError(join(path_, key), "must be finite");
    return d;
  }

  // Canonical key or one alias, converted to canonical units.
  std::optional<double> quantity(std::string_view canonical, std::initializer_list<Alias> aliases) {
    std::vector<std::string_view> present;
    if (has(canonical)) present.push_back(canonical);
    for (const auto& a : aliases) {
      if (has(a.key)) present.push_back(a.key);
    }
    if (present.size() > 1) {
      throw ValidationError(join(path_, present[1]),
                            "conflicts with '" + std::string(present[0]) + "'; give only one");
    }
    if (auto v = number(canonical)) return v;
    for (const auto& a : aliases) {
      if (auto v = number(a.key)) return a.to_canonical(*v);
    }
    return std::nullopt;
  }

  std::optional<std::int64_t> integer(std::string_view key) {
    const json* v = take(key);
    if (v == nullptr) return std::nullopt;
    if (v->is_number_integer()) return v->get<std::int64_t>();
    if (v->is_number_float()) {
      const double d = v->get<double>();
      if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e18) {
        return static_cast<std::int64_t>(d);
      }
    }
    throw ValidationError(join(path_, key), "expected an integer");
  }

  std::optional<std::string> string(std::string_view key) {
    const json* v = take(key);
    if (v == nullptr) return std::nullopt;
    if (!v->is_string()) throw ValidationError(join(path_, key), "expected a string");
    return v->get<std::string>();
  }

  const json* object(std::string_view key) {
    const json* v = take(key);
    if (v != nullptr && !v->is_object()) throw ValidationError(join(path_, key), "expected an object");
    return v;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.contains(it.key())) throw UnknownKeyError(join(path_, it.key()));
    }
  }

 private:
  const json* take(std::string_view key) {
    auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    used_.insert(std::string(key));
    return &*it;
  }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

// Fails when a newly introduced map entry leaves a required field unset.
void require(const ObjectReader& r, std::initializer_list<std::initializer_list<std::string_view>> fields) {
  for (const auto& alternatives : fields) {
    bool found = false;
    for (auto k : alternatives) found = found || r.has(k);
    if (!found) throw ValidationError(join(r.path(), *alternatives.begin()), "required for a new entry");
  }
}

Alias scaled(std::string_view key, double factor) {
  return {key, [factor](double v) { return v * factor; }};
}
Alias divided(std::string_view key, double divisor) {
  return {key, [divisor](double v) { return v / divisor; }};
}

template <class Q>
void set_if(std::optional<double> v, Q& target, Q (*make)(double)) {
  if (v) target = make(*v);
}

// Wraps quantity constructors so that negative inputs surface as validation
// errors with the field path instead of bare domain errors.
template <class F>
auto guarded(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(field, e.what());
  }
}

int parse_node_key(const std::string& key, const std::string& path) {
  std::size_t pos = 0;
  int nm = 0;
  try {
    nm = std::stoi(key, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != key.size() || nm <= 0) throw ValidationError(join(path, key), "node keys are positive integers (nm)");
  return nm;
}

void read_design(const json& j, DesignHouseParams& d) {
  ObjectReader r(j, "design");
  guarded("design", [&] {
    set_if(r.quantity("annual_energy_kwh", {scaled("annual_energy_gwh", 1.0e6)}), d.annual_energy,
           &Energy::kwh);
    set_if(r.quantity("grid_intensity_kg_per_kwh", {divided("grid_intensity_g_per_kwh", 1000.0)}),
           d.grid_intensity, &CarbonIntensity::kg_per_kwh);
    set_if(r.quantity("project_duration_hours", {scaled("project_duration_years", kHoursPerYear)}),
           d.project_duration, &Duration::hours);
    return 0;
  });
  if (auto v = r.integer("total_employees")) d.total_employees = *v;
  if (auto v = r.integer("project_employees")) d.project_employees = *v;
  if (auto v = r.integer("avg_gates_per_chip")) d.avg_gates_per_chip = *v;
  r.finish();
}

void read_node(ObjectReader& r, TechNodeParams& n) {
  if (auto v = r.quantity("energy_per_area_kwh_per_mm2", {divided("energy_per_area_kwh_per_cm2", 100.0)}))
    n.energy_per_area_kwh = *v;
  if (auto v = r.quantity("gas_per_area_kg_per_mm2", {divided("gas_per_area_kg_per_cm2", 100.0)}))
    n.gas_per_area_kg = *v;
  if (auto v = r.quantity("materials_new_kg_per_mm2", {divided("materials_new_kg_per_cm2", 100.0)}))
    n.materials_new_per_area_kg = *v;
  if (auto v = r.quantity("materials_recycled_kg_per_mm2", {divided("materials_recycled_kg_per_cm2", 100.0)}))
    n.materials_recycled_per_area_kg = *v;
  if (auto v = r.number("yield")) n.yield = *v;
  guarded(join(r.path(), "fab_intensity_kg_per_kwh"), [&] {
    set_if(r.quantity("fab_intensity_kg_per_kwh", {divided("fab_intensity_g_per_kwh", 1000.0)}),
           n.fab_intensity, &CarbonIntensity::kg_per_kwh);
    return 0;
  });
}

void read_nodes(const json& j, NodeTable& nodes) {
  if (!j.is_object()) throw ValidationError("nodes", "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const int nm = parse_node_key(it.key(), "nodes");
    ObjectReader r(it.value(), "nodes." + it.key());
    auto found = nodes.find(nm);
    TechNodeParams n;
    if (found != nodes.end()) {
      n = found->second;
    } else {
      require(r, {{"energy_per_area_kwh_per_mm2", "energy_per_area_kwh_per_cm2"},
                  {"gas_per_area_kg_per_mm2", "gas_per_area_kg_per_cm2"},
                  {"materials_new_kg_per_mm2", "materials_new_kg_per_cm2"},
                  {"materials_recycled_kg_per_mm2", "materials_recycled_kg_per_cm2"},
                  {"yield"},
                  {"fab_intensity_kg_per_kwh", "fab_intensity_g_per_kwh"}});
    }
    n.node_nm = nm;
    read_node(r, n);
    r.finish();
    nodes[nm] = n;
  }
}

void read_eol(const json& j, EolParams& e) {
  ObjectReader r(j, "eol");
  if (auto v = r.number("recycle_fraction")) e.recycle_fraction = *v;
  if (auto v = r.quantity("discard_kg_per_ton", {scaled("discard_mt_per_ton", kKgPerMetricTon)}))
    e.discard_kg_per_ton = *v;
  if (auto v = r.quantity("recycle_credit_kg_per_ton", {scaled("recycle_credit_mt_per_ton", kKgPerMetricTon)}))
    e.recycle_credit_kg_per_ton = *v;
  if (auto v = r.number("mass_g_per_mm2")) e.mass_g_per_mm2 = *v;
  r.finish();
}

void read_appdev(const json& j, AppDevParams& a, double hours_per_month) {
  ObjectReader r(j, "appdev");
  guarded("appdev", [&] {
    set_if(r.quantity("t_fe_hours", {scaled("t_fe_months", hours_per_month)}), a.t_fe, &Duration::hours);
    set_if(r.quantity("t_be_hours", {scaled("t_be_months", hours_per_month)}), a.t_be, &Duration::hours);
    set_if(r.quantity("t_config_hours", {}), a.t_config, &Duration::hours);
    set_if(r.quantity("asic_t_config_hours", {}), a.asic_t_config, &Duration::hours);
    set_if(r.quantity("dev_power_w", {}), a.dev_power, &Power::watts);
    set_if(r.quantity("dev_grid_intensity_kg_per_kwh", {divided("dev_grid_intensity_g_per_kwh", 1000.0)}),
           a.dev_grid_intensity, &CarbonIntensity::kg_per_kwh);
    return 0;
  });
  r.finish();
}

void read_operation(const json& j, OperationParams& o) {
  ObjectReader r(j, "operation");
  if (auto v = r.number("duty_cycle")) o.duty_cycle = *v;
  guarded("operation", [&] {
    set_if(r.quantity("use_grid_intensity_kg_per_kwh", {divided("use_grid_intensity_g_per_kwh", 1000.0)}),
           o.use_grid_intensity, &CarbonIntensity::kg_per_kwh);
    return 0;
  });
  r.finish();
}

AppDevScaling parse_scaling(const std::string& s) {
  if (s == "one_time") return AppDevScaling::OneTime;
  if (s == "literal") return AppDevScaling::Literal;
  throw ValidationError("options.appdev_scaling", "expected \"one_time\" or \"literal\"");
}

std::string_view scaling_name(AppDevScaling s) {
  return s == AppDevScaling::Literal ? "literal" : "one_time";
}

void read_options(const json& j, ModelOptions& o) {
  ObjectReader r(j, "options");
  if (auto v = r.string("appdev_scaling")) o.appdev_scaling = parse_scaling(*v);
  if (auto v = r.number("hours_per_dev_month")) o.hours_per_dev_month = *v;
  if (auto v = r.number("recycled_material_fraction")) o.recycled_material_fraction = *v;
  if (auto v = r.number("tie_tolerance")) o.tie_tolerance = *v;
  if (auto v = r.number("closure_tolerance")) o.closure_tolerance = *v;
  if (auto v = r.integer("default_num_apps")) o.default_num_apps = *v;
  if (auto v = r.number("default_lifetime_years")) o.default_lifetime_years = *v;
  if (auto v = r.integer("default_volume")) o.default_volume = *v;
  r.finish();
}

ChipKind parse_kind(const std::string& s, const std::string& field) {
  if (s == "ASIC") return ChipKind::Asic;
  if (s == "FPGA") return ChipKind::Fpga;
  throw ValidationError(field, "expected \"ASIC\" or \"FPGA\"");
}

void read_chip(const json& j, const std::string& path, const std::string& name, ChipSpec& c,
               bool is_new) {
  ObjectReader r(j, path);
  if (is_new) {
    require(r, {{"area_mm2"}, {"peak_power_w"}, {"gates"}, {"node_nm"}, {"package_kg"},
                {"chip_lifetime_hours", "chip_lifetime_years"}});
  }
  c.name = name;
  if (auto v = r.string("kind")) c.kind = parse_kind(*v, join(path, "kind"));
  if (auto v = r.number("area_mm2")) c.area_mm2 = *v;
  if (auto v = r.integer("gates")) c.gates = *v;
  if (auto v = r.integer("node_nm")) {
    if (*v <= 0 || *v > std::numeric_limits<int>::max()) {
      throw ValidationError(join(path, "node_nm"), "must be a positive integer");
    }
    c.node_nm = static_cast<int>(*v);
  }
  guarded(path, [&] {
    set_if(r.quantity("peak_power_w", {}), c.peak_power, &Power::watts);
    if (auto v = r.number("package_kg")) c.package.carbon_per_package = CarbonMass::kg(*v);
    set_if(r.quantity("chip_lifetime_hours", {scaled("chip_lifetime_years", kHoursPerYear)}),
           c.chip_lifetime, &Duration::hours);
    return 0;
  });
  r.finish();
}

void read_chip_map(const json& j, const std::string& path, std::map<std::string, ChipSpec>& chips,
                   ChipKind default_kind) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto found = chips.find(it.key());
    const bool is_new = found == chips.end();
    ChipSpec c;
    if (!is_new) {
      c = found->second;
    } else {
      c.kind = default_kind;
    }
    read_chip(it.value(), join(path, it.key()), it.key(), c, is_new);
    chips[it.key()] = c;
  }
}

void read_testcases(const json& j, TestcaseLibrary& lib) {
  ObjectReader r(j, "testcases");
  guarded("testcases", [&] {
    set_if(r.quantity("fpga_lifetime_hours", {scaled("fpga_lifetime_years", kHoursPerYear)}),
           lib.fpga_lifetime, &Duration::hours);
    return 0;
  });
  if (const json* ratios = r.object("domain_ratios")) {
    for (auto it = ratios->begin(); it != ratios->end(); ++it) {
      ObjectReader rr(it.value(), "testcases.domain_ratios." + it.key());
      auto found = lib.domain_ratios.find(it.key());
      DomainRatios d;
      if (found != lib.domain_ratios.end()) {
        d = found->second;
      } else {
        require(rr, {{"area_ratio"}, {"power_ratio"}});
      }
      if (auto v = rr.number("area_ratio")) d.area_ratio = *v;
      if (auto v = rr.number("power_ratio")) d.power_ratio = *v;
      rr.finish();
      lib.domain_ratios[it.key()] = d;
    }
  }
  if (const json* b = r.object("baseline_asics")) {
    read_chip_map(*b, "testcases.baseline_asics", lib.baseline_asics, ChipKind::Asic);
  }
  if (const json* c = r.object("industry_chips")) {
    read_chip_map(*c, "testcases.industry_chips", lib.industry_chips, ChipKind::Asic);
  }
  r.finish();
}

void read_provenance(const json& j, Provenance& p) {
  if (!j.is_object()) throw ValidationError("provenance", "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_string()) throw ValidationError("provenance." + it.key(), "expected a string");
    p.notes[it.key()] = it.value().get<std::string>();
  }
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed parameter document: ") + e.what());
  }
}

// Overlays a parsed document onto `p` without validating.
void apply_document(const json& doc, ParameterSet& p) {
  ObjectReader root(doc, "");
  if (auto base = root.string("base")) {
    if (*base == "none") {
      p = ParameterSet{};
    } else if (*base != "bundled") {
      throw ValidationError("base", "expected \"bundled\" or \"none\"");
    }
  }
  // Options first: month conversions depend on hours_per_dev_month.
  if (const json* s = root.object("options")) read_options(*s, p.options);
  if (const json* s = root.object("design")) read_design(*s, p.design);
  if (const json* s = root.object("nodes")) read_nodes(*s, p.nodes);
  if (const json* s = root.object("eol")) read_eol(*s, p.eol);
  if (const json* s = root.object("appdev")) read_appdev(*s, p.appdev, p.options.hours_per_dev_month);
  if (const json* s = root.object("operation")) read_operation(*s, p.operation);
  if (const json* s = root.object("testcases")) read_testcases(*s, p.testcases);
  if (const json* s = root.object("provenance")) read_provenance(*s, p.provenance);
  root.finish();
}

void throw_first_error(const std::vector<Finding>& findings) {
  for (const auto& f : findings) {
    if (f.severity == Severity::Error) throw ValidationError(f.path, f.message);
  }
}

class FindingSink {
 public:
  void error(std::string path, std::string msg) {
    out.push_back({Severity::Error, std::move(path), std::move(msg)});
  }
  void warning(std::string path, std::string msg) {
    out.push_back({Severity::Warning, std::move(path), std::move(msg)});
  }
  void fraction(const std::string& path, double v) {
    if (!(v >= 0.0 && v <= 1.0)) error(path, "must lie in [0, 1], got " + fmt(v));
  }
  void non_negative(const std::string& path, double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) error(path, "must be finite and >= 0, got " + fmt(v));
  }
  void positive(const std::string& path, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) error(path, "must be finite and > 0, got " + fmt(v));
  }
  void intensity(const std::string& path, CarbonIntensity ci) {
    if (ci.kg_per_kwh() > kMaxIntensity) {
      error(path, "must be <= " + fmt(kMaxIntensity) + " kg/kWh, got " + fmt(ci.kg_per_kwh()));
    }
  }
  void guidance(const std::string& path, double v, double lo, double hi, std::string_view unit) {
    if (v < lo || v > hi) {
      warning(path, "outside the typical range " + fmt(lo) + " to " + fmt(hi) + " " +
                        std::string(unit) + ", got " + fmt(v));
    }
  }

  static std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
  }

  static constexpr double kMaxIntensity = 2.0;
  std::vector<Finding> out;
};

void check_chip(FindingSink& s, const ParameterSet& p, const std::string& path, const ChipSpec& c) {
  s.positive(path + ".area_mm2", c.area_mm2);
  if (c.gates < 1) s.error(path + ".gates", "must be >= 1");
  s.positive(path + ".chip_lifetime_hours", c.chip_lifetime.hours());
  if (!p.nodes.contains(c.node_nm)) {
    s.error(path + ".node_nm", "no manufacturing data for " + std::to_string(c.node_nm) + " nm");
  }
}

}  // namespace

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

const DomainRatios* TestcaseLibrary::find_ratios(const std::string& domain) const {
  auto it = domain_ratios.find(domain);
  return it == domain_ratios.end() ? nullptr : &it->second;
}

const ChipSpec* TestcaseLibrary::find_baseline(const std::string& domain) const {
  auto it = baseline_asics.find(domain);
  return it == baseline_asics.end() ? nullptr : &it->second;
}

const ChipSpec* TestcaseLibrary::find_chip(const std::string& name) const {
  auto it = industry_chips.find(name);
  return it == industry_chips.end() ? nullptr : &it->second;
}

std::vector<Finding> validate(const ParameterSet& p) {
  FindingSink s;

  const auto& d = p.design;
  s.intensity("design.grid_intensity_kg_per_kwh", d.grid_intensity);
  if (d.total_employees < 1) s.error("design.total_employees", "must be >= 1");
  if (d.project_employees < 1) s.error("design.project_employees", "must be >= 1");
  if (d.avg_gates_per_chip < 1) s.error("design.avg_gates_per_chip", "must be >= 1");
  s.positive("design.project_duration_hours", d.project_duration.hours());
  s.guidance("design.annual_energy_kwh", d.annual_energy.kwh() / 1.0e6, 2.0, 7.3, "GWh");
  s.guidance("design.grid_intensity_kg_per_kwh", d.grid_intensity.kg_per_kwh() * 1000.0, 30.0, 700.0, "g/kWh");
  s.guidance("design.total_employees", static_cast<double>(d.total_employees), 20000.0, 160000.0,
             "employees");
  s.guidance("design.project_duration_hours", d.project_duration.years(), 1.0, 3.0, "years");

  for (const auto& [nm, n] : p.nodes) {
    const std::string path = "nodes." + std::to_string(nm);
    if (n.node_nm != nm) s.error(path + ".node_nm", "does not match its key");
    s.non_negative(path + ".energy_per_area_kwh_per_mm2", n.energy_per_area_kwh);
    s.non_negative(path + ".gas_per_area_kg_per_mm2", n.gas_per_area_kg);
    s.non_negative(path + ".materials_new_kg_per_mm2", n.materials_new_per_area_kg);
    s.non_negative(path + ".materials_recycled_kg_per_mm2", n.materials_recycled_per_area_kg);
    if (!(n.yield > 0.0 && n.yield <= 1.0)) {
      s.error(path + ".yield", "must lie in (0, 1], got " + FindingSink::fmt(n.yield));
    }
    s.intensity(path + ".fab_intensity_kg_per_kwh", n.fab_intensity);
  }

  const auto& e = p.eol;
  s.fraction("eol.recycle_fraction", e.recycle_fraction);
  s.non_negative("eol.discard_kg_per_ton", e.discard_kg_per_ton);
  s.non_negative("eol.recycle_credit_kg_per_ton", e.recycle_credit_kg_per_ton);
  s.non_negative("eol.mass_g_per_mm2", e.mass_g_per_mm2);
  s.guidance("eol.discard_kg_per_ton", e.discard_kg_per_ton / kKgPerMetricTon, 0.03, 2.08, "MTCO2e/ton");
  s.guidance("eol.recycle_credit_kg_per_ton", e.recycle_credit_kg_per_ton / kKgPerMetricTon, 7.65, 29.83,
             "MTCO2e/ton");

  const auto& a = p.appdev;
  const double hpm = p.options.hours_per_dev_month;
  s.intensity("appdev.dev_grid_intensity_kg_per_kwh", a.dev_grid_intensity);
  if (hpm > 0.0) {
    s.guidance("appdev.t_fe_hours", a.t_fe.hours() / hpm, 1.5, 2.5, "months");
    s.guidance("appdev.t_be_hours", a.t_be.hours() / hpm, 0.5, 1.5, "months");
  }

  s.fraction("operation.duty_cycle", p.operation.duty_cycle);
  s.intensity("operation.use_grid_intensity_kg_per_kwh", p.operation.use_grid_intensity);

  const auto& o = p.options;
  s.positive("options.hours_per_dev_month", o.hours_per_dev_month);
  s.fraction("options.recycled_material_fraction", o.recycled_material_fraction);
  if (!(o.tie_tolerance >= 0.0 && o.tie_tolerance < 1.0)) {
    s.error("options.tie_tolerance", "must lie in [0, 1)");
  }
  if (!(o.closure_tolerance >= 0.0 && o.closure_tolerance < 1.0)) {
    s.error("options.closure_tolerance", "must lie in [0, 1)");
  }
  if (o.default_num_apps < 1) s.error("options.default_num_apps", "must be >= 1");
  s.positive("options.default_lifetime_years", o.default_lifetime_years);
  if (o.default_volume < 0) s.error("options.default_volume", "must be >= 0");

  const auto& lib = p.testcases;
  s.positive("testcases.fpga_lifetime_hours", lib.fpga_lifetime.hours());
  for (const auto& [name, r] : lib.domain_ratios) {
    const std::string path = "testcases.domain_ratios." + name;
    s.positive(path + ".area_ratio", r.area_ratio);
    s.non_negative(path + ".power_ratio", r.power_ratio);
  }
  for (const auto& [name, c] : lib.baseline_asics) {
    const std::string path = "testcases.baseline_asics." + name;
    check_chip(s, p, path, c);
    if (c.kind != ChipKind::Asic) s.error(path + ".kind", "baseline chips must be ASICs");
  }
  for (const auto& [name, c] : lib.industry_chips) {
    check_chip(s, p, "testcases.industry_chips." + name, c);
  }
  return s.out;
}

bool has_errors(const std::vector<Finding>& findings) {
  for (const auto& f : findings) {
    if (f.severity == Severity::Error) return true;
  }
  return false;
}

NodeTable parse_node_csv(std::string_view csv, std::string* header) {
  static const std::vector<std::string> kColumns = {
      "node_nm", "energy_kwh_per_cm2", "gas_kg_per_cm2", "materials_new_kg_per_cm2",
      "materials_recycled_kg_per_cm2", "yield", "fab_intensity_g_per_kwh"};

  NodeTable out;
  std::istringstream in{std::string(csv)};
  std::string line;
  bool have_columns = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (header != nullptr) {
        const auto text = line.find_first_not_of("# ");
        *header += (header->empty() ? "" : "\n") + (text == std::string::npos ? "" : line.substr(text));
      }
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    const std::string where = "nodes.csv:" + std::to_string(line_no);
    if (!have_columns) {
      if (cells != kColumns) throw ParseError(where + ": unexpected column header");
      have_columns = true;
      continue;
    }
    if (cells.size() != kColumns.size()) throw ParseError(where + ": expected 7 columns");
    std::array<double, 7> v{};
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::size_t pos = 0;
      try {
        v[i] = std::stod(cells[i], &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || pos != cells[i].size()) throw ParseError(where + ": bad number '" + cells[i] + "'");
    }
    TechNodeParams n;
    n.node_nm = static_cast<int>(v[0]);
    if (n.node_nm <= 0 || static_cast<double>(n.node_nm) != v[0]) {
      throw ParseError(where + ": node must be a positive integer");
    }
    const std::string path = "nodes." + std::to_string(n.node_nm);
    if (out.contains(n.node_nm)) throw ParseError(where + ": duplicate node " + std::to_string(n.node_nm));
    n.energy_per_area_kwh = v[1] / 100.0;
    n.gas_per_area_kg = v[2] / 100.0;
    n.materials_new_per_area_kg = v[3] / 100.0;
    n.materials_recycled_per_area_kg = v[4] / 100.0;
    n.yield = v[5];
    n.fab_intensity = guarded(path + ".fab_intensity_kg_per_kwh",
                              [&] { return CarbonIntensity::g_per_kwh(v[6]); });
    out[n.node_nm] = n;
  }
  if (!have_columns) throw ParseError("nodes.csv: missing column header");
  return out;
}

const ParameterSet& bundled_defaults() {
  static const ParameterSet defaults = [] {
    ParameterSet p;
    std::string header;
    p.nodes = parse_node_csv(bundled::tech_nodes_csv(), &header);
    apply_document(parse_json(bundled::defaults_json()), p);
    if (!header.empty() && !p.provenance.notes.contains("nodes")) p.provenance.notes["nodes"] = header;
    throw_first_error(validate(p));
    return p;
  }();
  return defaults;
}

const TestcaseLibrary& builtin_testcases() { return bundled_defaults().testcases; }

ParameterSet load_parameters(std::string_view document, const ParameterSet& base) {
  ParameterSet p = base;
  const auto first = document.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos) apply_document(parse_json(document), p);
  throw_first_error(validate(p));
  return p;
}

ParameterSet load_parameters(std::string_view document) {
  return load_parameters(document, bundled_defaults());
}

ParameterSet with_node_csv(ParameterSet p, std::string_view csv) {
  std::string header;
  p.nodes = parse_node_csv(csv, &header);
  if (!header.empty()) p.provenance.notes["nodes"] = header;
  throw_first_error(validate(p));
  return p;
}

namespace {

json chip_json(const ChipSpec& c) {
  json j;
  j["kind"] = std::string(to_string(c.kind));
  j["area_mm2"] = c.area_mm2;
  j["peak_power_w"] = c.peak_power.watts();
  j["gates"] = c.gates;
  j["node_nm"] = c.node_nm;
  j["package_kg"] = c.package.carbon_per_package.kg();
  j["chip_lifetime_hours"] = c.chip_lifetime.hours();
  return j;
}

}  // namespace

std::string serialize(const ParameterSet& p) {
  json j;
  j["base"] = "none";

  const auto& o = p.options;
  j["options"] = {
      {"appdev_scaling", std::string(scaling_name(o.appdev_scaling))},
      {"hours_per_dev_month", o.hours_per_dev_month},
      {"recycled_material_fraction", o.recycled_material_fraction},
      {"tie_tolerance", o.tie_tolerance},
      {"closure_tolerance", o.closure_tolerance},
      {"default_num_apps", o.default_num_apps},
      {"default_lifetime_years", o.default_lifetime_years},
      {"default_volume", o.default_volume},
  };

  const auto& d = p.design;
  j["design"] = {
      {"annual_energy_kwh", d.annual_energy.kwh()},
      {"grid_intensity_kg_per_kwh", d.grid_intensity.kg_per_kwh()},
      {"total_employees", d.total_employees},
      {"project_employees", d.project_employees},
      {"avg_gates_per_chip", d.avg_gates_per_chip},
      {"project_duration_hours", d.project_duration.hours()},
  };

  json nodes = json::object();
  for (const auto& [nm, n] : p.nodes) {
    nodes[std::to_string(nm)] = {
        {"energy_per_area_kwh_per_mm2", n.energy_per_area_kwh},
        {"gas_per_area_kg_per_mm2", n.gas_per_area_kg},
        {"materials_new_kg_per_mm2", n.materials_new_per_area_kg},
        {"materials_recycled_kg_per_mm2", n.materials_recycled_per_area_kg},
        {"yield", n.yield},
        {"fab_intensity_kg_per_kwh", n.fab_intensity.kg_per_kwh()},
    };
  }
  j["nodes"] = nodes;

  j["eol"] = {
      {"recycle_fraction", p.eol.recycle_fraction},
      {"discard_kg_per_ton", p.eol.discard_kg_per_ton},
      {"recycle_credit_kg_per_ton", p.eol.recycle_credit_kg_per_ton},
      {"mass_g_per_mm2", p.eol.mass_g_per_mm2},
  };

  const auto& a = p.appdev;
  j["appdev"] = {
      {"t_fe_hours", a.t_fe.hours()},
      {"t_be_hours", a.t_be.hours()},
      {"t_config_hours", a.t_config.hours()},
      {"asic_t_config_hours", a.asic_t_config.hours()},
      {"dev_power_w", a.dev_power.watts()},
      {"dev_grid_intensity_kg_per_kwh", a.dev_grid_intensity.kg_per_kwh()},
  };

  j["operation"] = {
      {"duty_cycle", p.operation.duty_cycle},
      {"use_grid_intensity_kg_per_kwh", p.operation.use_grid_intensity.kg_per_kwh()},
  };

  const auto& lib = p.testcases;
  json tc;
  tc["fpga_lifetime_hours"] = lib.fpga_lifetime.hours();
  json ratios = json::object();
  for (const auto& [name, r] : lib.domain_ratios) {
    ratios[name] = {{"area_ratio", r.area_ratio}, {"power_ratio", r.power_ratio}};
  }
  tc["domain_ratios"] = ratios;
  json baselines = json::object();
  for (const auto& [name, c] : lib.baseline_asics) baselines[name] = chip_json(c);
  tc["baseline_asics"] = baselines;
  json industry = json::object();
  for (const auto& [name, c] : lib.industry_chips) industry[name] = chip_json(c);
  tc["industry_chips"] = industry;
  j["testcases"] = tc;

  json prov = json::object();
  for (const auto& [k, v] : p.provenance.notes) prov[k] = v;
  j["provenance"] = prov;

  return j.dump(2) + "\n";
}

}  // namespace greenfpga
