#include "config.hpp"

#include <cmath>
#include <fstream>

namespace tedcli {

namespace {

const char* const kSweepParameters[] = {"length", "prestrain", "power_per_length", "heat_source",
                                        "body_force", "upsilon", "beta", "chi", "n_elem"};

json end_defaults() {
  // therm_value null: T0 for isothermal ends
  return {{"mech", "fixed"}, {"mech_value", 0.0}, {"therm", "isothermal"}, {"therm_value", nullptr}};
}

bool compatible(const json& def, const json& val) {
  if (def.is_null()) return val.is_null() || val.is_number();
  if (def.is_number()) return val.is_number();
  if (def.is_boolean()) return val.is_boolean();
  if (def.is_string()) return val.is_string();
  if (def.is_array()) return val.is_array();
  return false;
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError(key + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& key) {
  const double v = number(j, key);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key + " must be an integer");
  return static_cast<int>(v);
}

tedfem_end end_of(const json& e, const std::string& side, double T0) {
  tedfem_end out{};
  const std::string mech = e.at("mech").get<std::string>();
  if (mech == "fixed") {
    out.mech = TEDFEM_MECH_FIXED;
  } else if (mech == "free") {
    out.mech = TEDFEM_MECH_FREE;
  } else {
    throw ConfigError("boundary." + side + ".mech must be fixed or free, got '" + mech + "'");
  }
  out.mech_value = number(e.at("mech_value"), "boundary." + side + ".mech_value");
  const std::string therm = e.at("therm").get<std::string>();
  const json& tv = e.at("therm_value");
  if (therm == "isothermal") {
    out.therm = TEDFEM_THERM_ISOTHERMAL;
    out.therm_value = tv.is_null() ? T0 : tv.get<double>();
  } else if (therm == "adiabatic") {
    out.therm = TEDFEM_THERM_ADIABATIC;
    out.therm_value = 0.0;
  } else if (therm == "flux") {
    out.therm = TEDFEM_THERM_FLUX;
    out.therm_value = tv.is_null() ? 0.0 : tv.get<double>();
  } else {
    throw ConfigError("boundary." + side + ".therm must be isothermal, adiabatic or flux, got '" + therm + "'");
  }
  return out;
}

}  // namespace

json default_config() {
  return {
      {"geometry", {{"length", 100e-9}, {"width", 10e-9}, {"thickness", 10e-9}}},
      {"material",
       {{"Y0", 165e9}, {"nu", 0.22}, {"rho0", 2300.0}, {"alpha0", 2.6e-6}, {"k0", 159.0}, {"cv0", 713.0},
        {"T0", 300.0}}},
      {"laws", {{"upsilon", 0.0}, {"beta", 0.0}, {"chi", 0.0}}},
      {"boundary", {{"left", end_defaults()}, {"right", end_defaults()}}},
      {"loads",
       {{"prestrain", 0.0}, {"heat_source", 0.0}, {"power_per_length", 0.0}, {"body_force", 0.0},
        {"n_steps", 10}}},
      {"mesh", {{"n_elem", 100}}},
      {"solver", {{"tol", 1e-10}, {"max_iter", 25}, {"quad_points", 3}, {"nondimensionalize", true}}},
      {"reference", {{"length", 100e-9}}},
      {"sweep",
       {{"parameter", "length"},
        {"values", json::array()},
        {"from", 20e-9},
        {"to", 400e-9},
        {"points", 20},
        {"spacing", "log"}}},
      {"validate_static", {{"max_stretch", 0.5}, {"points", 11}}},
      {"output", {{"path", ""}}},
  };
}

void merge_checked(json& base, const json& user, const std::string& where) {
  if (!user.is_object()) throw ConfigError("configuration" + (where.empty() ? "" : " at " + where) + " must be an object");
  for (auto it = user.begin(); it != user.end(); ++it) {
    const std::string key = where.empty() ? it.key() : where + "." + it.key();
    if (!base.contains(it.key())) throw ConfigError("unknown configuration key '" + key + "'");
    json& slot = base[it.key()];
    if (slot.is_object()) {
      merge_checked(slot, it.value(), key);
    } else {
      if (!compatible(slot, it.value())) throw ConfigError("wrong type for '" + key + "'");
      slot = it.value();
    }
  }
}

void apply_override(json& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  // build the nested object and merge it so the same checks apply
  json patch = value;
  std::string rest = key;
  std::vector<std::string> parts;
  for (std::size_t pos; (pos = rest.find('.')) != std::string::npos; rest = rest.substr(pos + 1))
    parts.push_back(rest.substr(0, pos));
  parts.push_back(rest);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (it->empty()) throw ConfigError("empty key segment in '" + key + "'");
    patch = json{{*it, patch}};
  }
  merge_checked(cfg, patch);
}

json load_config(const std::string& path, const std::vector<std::string>& overrides) {
  json cfg = default_config();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
    json user = json::parse(in, nullptr, false);
    if (user.is_discarded()) throw ConfigError("configuration file '" + path + "' is not valid JSON");
    merge_checked(cfg, user);
  }
  for (const auto& o : overrides) apply_override(cfg, o);
  return cfg;
}

tedfem_problem_desc problem_desc(const json& cfg) {
  tedfem_problem_desc d;
  tedfem_problem_desc_init(&d);
  const json& m = cfg.at("material");
  d.Y0 = number(m.at("Y0"), "material.Y0");
  d.nu = number(m.at("nu"), "material.nu");
  d.rho0 = number(m.at("rho0"), "material.rho0");
  d.alpha0 = number(m.at("alpha0"), "material.alpha0");
  d.k0 = number(m.at("k0"), "material.k0");
  d.cv0 = number(m.at("cv0"), "material.cv0");
  d.T0 = number(m.at("T0"), "material.T0");
  const json& l = cfg.at("laws");
  d.upsilon = number(l.at("upsilon"), "laws.upsilon");
  d.beta = number(l.at("beta"), "laws.beta");
  d.chi = number(l.at("chi"), "laws.chi");
  const json& g = cfg.at("geometry");
  const double width = number(g.at("width"), "geometry.width");
  const double thickness = number(g.at("thickness"), "geometry.thickness");
  if (!(width > 0.0) || !(thickness > 0.0)) throw ConfigError("geometry.width and geometry.thickness must be positive");
  d.length = number(g.at("length"), "geometry.length");
  d.area = width * thickness;
  d.n_elem = integer(cfg.at("mesh").at("n_elem"), "mesh.n_elem");
  d.left = end_of(cfg.at("boundary").at("left"), "left", d.T0);
  d.right = end_of(cfg.at("boundary").at("right"), "right", d.T0);
  const json& p = cfg.at("loads");
  d.prestrain = number(p.at("prestrain"), "loads.prestrain");
  d.heat_source = number(p.at("heat_source"), "loads.heat_source");
  d.power_per_length = number(p.at("power_per_length"), "loads.power_per_length");
  d.body_force = number(p.at("body_force"), "loads.body_force");
  d.n_steps = integer(p.at("n_steps"), "loads.n_steps");
  const json& s = cfg.at("solver");
  d.tol = number(s.at("tol"), "solver.tol");
  d.max_iter = integer(s.at("max_iter"), "solver.max_iter");
  d.quad_points = integer(s.at("quad_points"), "solver.quad_points");
  d.nondimensionalize = s.at("nondimensionalize").get<bool>() ? 1 : 0;
  return d;
}

std::vector<double> sweep_values(const json& cfg) {
  const json& s = cfg.at("sweep");
  const std::string param = s.at("parameter").get<std::string>();
  bool known = false;
  for (const char* k : kSweepParameters) known = known || param == k;
  if (!known) throw ConfigError("sweep.parameter '" + param + "' is not a sweepable parameter");
  std::vector<double> v;
  if (!s.at("values").empty()) {
    for (const auto& x : s.at("values")) v.push_back(number(x, "sweep.values[]"));
    return v;
  }
  const double from = number(s.at("from"), "sweep.from");
  const double to = number(s.at("to"), "sweep.to");
  const int n = integer(s.at("points"), "sweep.points");
  const std::string spacing = s.at("spacing").get<std::string>();
  if (n < 1) throw ConfigError("sweep.points must be at least 1");
  if (spacing != "log" && spacing != "linear") throw ConfigError("sweep.spacing must be log or linear");
  if (spacing == "log" && !(from > 0.0 && to > 0.0)) throw ConfigError("log spacing needs positive sweep.from and sweep.to");
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    v.push_back(spacing == "log" ? std::exp(std::log(from) + t * (std::log(to) - std::log(from)))
                                 : from + t * (to - from));
  }
  // exact end points
  v.front() = from;
  if (n > 1) v.back() = to;
  if (param == "n_elem")
    for (auto& x : v) x = std::round(x);
  return v;
}

void apply_sweep_value(tedfem_problem_desc& d, const std::string& parameter, double value) {
  if (parameter == "length") d.length = value;
  else if (parameter == "prestrain") d.prestrain = value;
  else if (parameter == "power_per_length") d.power_per_length = value;
  else if (parameter == "heat_source") d.heat_source = value;
  else if (parameter == "body_force") d.body_force = value;
  else if (parameter == "upsilon") d.upsilon = value;
  else if (parameter == "beta") d.beta = value;
  else if (parameter == "chi") d.chi = value;
  else if (parameter == "n_elem") {
    if (value != std::floor(value)) throw ConfigError("n_elem sweep values must be integers");
    d.n_elem = static_cast<int>(value);
  } else {
    throw ConfigError("unknown sweep parameter '" + parameter + "'");
  }
}

std::string mech_label(const tedfem_problem_desc& d) {
  auto one = [](const tedfem_end& e) { return e.mech == TEDFEM_MECH_FIXED ? "fixed" : "free"; };
  return std::string(one(d.left)) + "-" + one(d.right);
}

std::string therm_label(const tedfem_problem_desc& d) {
  auto one = [](const tedfem_end& e) {
    return e.therm == TEDFEM_THERM_ISOTHERMAL ? "isothermal" : e.therm == TEDFEM_THERM_ADIABATIC ? "adiabatic" : "flux";
  };
  return std::string(one(d.left)) + "-" + one(d.right);
}

}  // namespace tedcli
