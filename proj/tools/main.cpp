// tedfem command line driver. Built on the C interface only.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"

namespace {

using tedcli::ConfigError;
using tedcli::json;

enum Exit { kOk = 0, kInternal = 1, kConfig = 2, kNoConvergence = 3, kEigen = 4 };

int exit_code(tedfem_status s) {
  switch (s) {
    case TEDFEM_OK: return kOk;
    case TEDFEM_ERR_INVALID_ARGUMENT:
    case TEDFEM_ERR_INVALID_MESH: return kConfig;
    case TEDFEM_ERR_NONPOSITIVE_CONDUCTIVITY:
    case TEDFEM_ERR_SINGULAR_SYSTEM:
    case TEDFEM_ERR_NO_CONVERGENCE:
    case TEDFEM_ERR_SINGULAR_TANGENT: return kNoConvergence;
    case TEDFEM_ERR_SINGULAR_MASS:
    case TEDFEM_ERR_EIGEN_NO_CONVERGENCE:
    case TEDFEM_ERR_NO_MECHANICAL_MODE: return kEigen;
    default: return kInternal;
  }
}

struct Failure : std::runtime_error {
  tedfem_status status;
  Failure(tedfem_status s, const std::string& what)
      : std::runtime_error(what + ": " + tedfem_status_string(s) + " (" + tedfem_last_error() + ")"), status(s) {}
};

void check(tedfem_status s, const std::string& what) {
  if (s != TEDFEM_OK) throw Failure(s, what);
}

struct ProblemDeleter {
  void operator()(tedfem_problem* p) const { tedfem_problem_destroy(p); }
};
using Problem = std::unique_ptr<tedfem_problem, ProblemDeleter>;

Problem make_problem(const tedfem_problem_desc& d) {
  tedfem_problem* p = nullptr;
  check(tedfem_problem_create(&d, &p), "problem setup");
  return Problem(p);
}

void validate(const tedfem_problem_desc& d, const std::string& what) {
  const tedfem_status s = tedfem_problem_validate(&d);
  if (s != TEDFEM_OK) throw ConfigError(what + ": " + tedfem_last_error());
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Options {
  std::string config;
  std::vector<std::string> sets;
  int jobs = 1;
  std::string out;
};

/// CSV destination. Without a path the table goes to stdout and the report
/// to stderr, so the two do not mix.
struct Output {
  std::string path;
  std::ostream& report() const { return path.empty() ? std::cerr : std::cout; }
};

Output resolve_output(const json& cfg, const Options& opt) {
  Output o;
  o.path = opt.out.empty() ? cfg.at("output").at("path").get<std::string>() : opt.out;
  return o;
}

void write_csv(const Output& o, const std::string& text, json cfg) {
  if (o.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + o.path + "'");
  f << text;
  // resolved configuration next to the table; re-running it reproduces the table
  cfg["output"]["path"] = "";
  std::ofstream side(o.path + ".json", std::ios::binary);
  if (!side) throw ConfigError("cannot write '" + o.path + ".json'");
  side << cfg.dump(2) << "\n";
}

// ---------------------------------------------------------------------------

int run_validate_static(const json& cfg, const Options& opt) {
  tedfem_problem_desc d = tedcli::problem_desc(cfg);
  if (d.left.mech != TEDFEM_MECH_FIXED || d.right.mech != TEDFEM_MECH_FREE)
    throw ConfigError("validate-static needs boundary.left.mech=fixed and boundary.right.mech=free");
  if (d.alpha0 != 0.0 && (d.heat_source != 0.0 || d.power_per_length != 0.0))
    throw ConfigError("validate-static compares against the isothermal stretch law; remove the heat sources");
  const double smax = cfg.at("validate_static").at("max_stretch").get<double>();
  const int n = cfg.at("validate_static").at("points").get<int>();
  if (!(smax > 0.0) || n < 2) throw ConfigError("validate_static needs max_stretch > 0 and points >= 2");
  if (d.prestrain != 0.0) throw ConfigError("validate-static sets the stretch itself; leave loads.prestrain at 0");
  validate(d, "configuration");

  const Output out = resolve_output(cfg, opt);
  std::ostringstream csv;
  csv << "stretch,force_N,force_per_area_Pa,reference_Pa,rel_error\n";
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    tedfem_problem_desc di = d;
    di.prestrain = smax * i / (n - 1);
    Problem p = make_problem(di);
    check(tedfem_solve_static(p.get()), "static solve at stretch " + fmt_short(di.prestrain));
    std::vector<double> R(tedfem_node_count(p.get()));
    check(tedfem_get_reactions(p.get(), R.data(), R.size()), "reactions");
    const double force = R.back();
    const double per_area = force / di.area;
    const double ref = tedfem_stretch_force_per_area(di.Y0, di.prestrain);
    const double err = ref != 0.0 ? std::abs(per_area - ref) / std::abs(ref) : std::abs(per_area) / di.Y0;
    worst = std::max(worst, err);
    csv << fmt(di.prestrain) << ',' << fmt(force) << ',' << fmt(per_area) << ',' << fmt(ref) << ',' << fmt(err)
        << '\n';
  }
  write_csv(out, csv.str(), cfg);
  out.report() << "validate-static: " << n << " stretches up to " << fmt_short(smax)
               << ", max relative error " << fmt_short(worst) << "\n";
  return kOk;
}

int run_validate_thermal(const json& cfg, const Options& opt) {
  tedfem_problem_desc d = tedcli::problem_desc(cfg);
  if (d.left.mech != TEDFEM_MECH_FIXED || d.right.mech != TEDFEM_MECH_FIXED)
    throw ConfigError("validate-thermal needs fixed-fixed ends");
  if (d.left.therm != TEDFEM_THERM_ISOTHERMAL || d.right.therm != TEDFEM_THERM_ISOTHERMAL)
    throw ConfigError("validate-thermal needs isothermal ends");
  if (d.chi != 0.0) throw ConfigError("validate-thermal reference ignores strain dependence; set laws.chi=0");
  validate(d, "configuration");
  const double r = d.heat_source + d.power_per_length / d.area;

  const Output out = resolve_output(cfg, opt);
  Problem p = make_problem(d);
  check(tedfem_solve_static(p.get()), "static solve");
  const std::size_t nn = tedfem_node_count(p.get());
  std::vector<double> x(nn), T(nn), ref(nn);
  check(tedfem_get_nodes(p.get(), x.data(), nn), "nodes");
  check(tedfem_get_temperature(p.get(), T.data(), nn), "temperature");
  check(tedfem_conduction_shooting(d.k0, d.beta, d.T0, r, x.back() - x.front(), d.left.therm_value,
                                   d.right.therm_value, x.data(), nn, ref.data()),
        "reference profile");

  std::ostringstream csv;
  csv << "x,T_fe,T_oracle\n";
  double worst = 0.0, rise = 0.0;
  for (std::size_t i = 0; i < nn; ++i) {
    csv << fmt(x[i]) << ',' << fmt(T[i]) << ',' << fmt(ref[i]) << '\n';
    worst = std::max(worst, std::abs(T[i] - ref[i]) / std::abs(ref[i]));
    rise = std::max(rise, ref[i] - d.T0);
  }
  write_csv(out, csv.str(), cfg);
  out.report() << "validate-thermal: " << nn << " nodes, source " << fmt_short(r) << " W/m^3, beta "
               << fmt_short(d.beta) << " 1/K, peak rise " << fmt_short(rise) << " K, max relative error "
               << fmt_short(worst) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct Row {
  double sweep_value = 0.0;
  tedfem_problem_desc desc{};
  tedfem_modal_result modal{};
  tedfem_status status = TEDFEM_OK;
  std::string error;
};

const char* kRowHeader =
    "sweep_value,L,omega_rad_s,q_inverse,dfreq_norm,prestrain,power_W_per_m,upsilon,beta,chi,bc_mech,bc_therm,"
    "n_elem,converged\n";

std::string row_csv(const Row& r) {
  const bool ok = r.status == TEDFEM_OK;
  const double nan = std::nan("");
  std::ostringstream s;
  s << fmt(r.sweep_value) << ',' << fmt(r.desc.length) << ',' << fmt(ok ? r.modal.omega : nan) << ','
    << fmt(ok ? r.modal.q_inverse : nan) << ',' << fmt(ok ? r.modal.shift : nan) << ',' << fmt(r.desc.prestrain)
    << ',' << fmt(r.desc.power_per_length) << ',' << fmt(r.desc.upsilon) << ',' << fmt(r.desc.beta) << ','
    << fmt(r.desc.chi) << ',' << tedcli::mech_label(r.desc) << ',' << tedcli::therm_label(r.desc) << ','
    << r.desc.n_elem << ',' << (ok ? "true" : "false") << '\n';
  return s.str();
}

using RefKey = std::pair<int, std::string>;

// Reference frequency depends on resolution and boundary types only among the
// fields a sweep can change.
RefKey ref_key(const tedfem_problem_desc& d) { return {d.n_elem, tedcli::mech_label(d) + tedcli::therm_label(d)}; }

void solve_rows(std::vector<Row>& rows, const std::map<RefKey, double>& refs, int jobs) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
      Row& r = rows[i];
      tedfem_problem* p = nullptr;
      r.status = tedfem_problem_create(&r.desc, &p);
      if (r.status == TEDFEM_OK) r.status = tedfem_modal(p, refs.at(ref_key(r.desc)), &r.modal);
      if (r.status != TEDFEM_OK) r.error = tedfem_last_error();
      tedfem_problem_destroy(p);
    }
  };
  const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), rows.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

std::map<RefKey, double> reference_frequencies(const std::vector<Row>& rows, double ref_length) {
  std::map<RefKey, double> refs;
  for (const Row& r : rows) {
    const RefKey k = ref_key(r.desc);
    if (refs.count(k)) continue;
    double w0 = 0.0;
    check(tedfem_reference_frequency(&r.desc, ref_length, &w0), "reference frequency");
    refs[k] = w0;
  }
  return refs;
}

int finish_rows(const std::vector<Row>& rows, const json& cfg, const Output& out) {
  std::ostringstream csv;
  csv << kRowHeader;
  int code = kOk;
  for (const Row& r : rows) {
    csv << row_csv(r);
    if (r.status != TEDFEM_OK) {
      out.report() << "row " << fmt_short(r.sweep_value) << " failed: " << tedfem_status_string(r.status) << " ("
                   << r.error << ")\n";
      if (code == kOk) code = exit_code(r.status);
    }
  }
  write_csv(out, csv.str(), cfg);
  return code;
}

int run_qfactor(const json& cfg, const Options& opt) {
  Row r;
  r.desc = tedcli::problem_desc(cfg);
  r.sweep_value = r.desc.length;
  validate(r.desc, "configuration");
  const Output out = resolve_output(cfg, opt);
  std::vector<Row> rows{r};
  const auto refs = reference_frequencies(rows, cfg.at("reference").at("length").get<double>());
  solve_rows(rows, refs, 1);
  const Row& s = rows.front();
  if (s.status == TEDFEM_OK) {
    out.report() << "qfactor: L " << fmt_short(s.desc.length) << " m, omega " << fmt_short(s.modal.omega)
                 << " rad/s, Q^-1 " << fmt_short(s.modal.q_inverse) << ", Q " << fmt_short(1.0 / s.modal.q_inverse)
                 << ", frequency shift " << fmt_short(s.modal.shift) << " vs " << fmt_short(s.modal.omega0_ref)
                 << " rad/s\n";
  }
  return finish_rows(rows, cfg, out);
}

int run_sweep(const json& cfg, const Options& opt) {
  const tedfem_problem_desc base = tedcli::problem_desc(cfg);
  const std::string param = cfg.at("sweep").at("parameter").get<std::string>();
  const std::vector<double> values = tedcli::sweep_values(cfg);
  std::vector<Row> rows;
  for (double v : values) {
    Row r;
    r.sweep_value = v;
    r.desc = base;
    tedcli::apply_sweep_value(r.desc, param, v);
    validate(r.desc, "sweep value " + fmt_short(v));
    rows.push_back(r);
  }
  const Output out = resolve_output(cfg, opt);
  const auto refs = reference_frequencies(rows, cfg.at("reference").at("length").get<double>());
  solve_rows(rows, refs, opt.jobs);

  // summary: location of the largest Q^-1
  std::size_t best = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].status == TEDFEM_OK && (best == rows.size() || rows[i].modal.q_inverse > rows[best].modal.q_inverse))
      best = i;
  out.report() << "sweep over " << param << ": " << rows.size() << " points";
  if (best < rows.size())
    out.report() << ", largest Q^-1 " << fmt_short(rows[best].modal.q_inverse) << " at " << fmt_short(rows[best].sweep_value)
                 << (best == 0 || best + 1 == rows.size() ? " (grid edge)" : "");
  out.report() << "\n";
  return finish_rows(rows, cfg, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled thermoelastic bar: static validation and thermoelastic damping"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tedfem_version()));

  Options opt;
  struct Command {
    const char* name;
    const char* help;
    int (*run)(const json&, const Options&);
  };
  const Command commands[] = {
      {"validate-static", "Stretch a fixed-free bar and compare forces with the hyperelastic law", run_validate_static},
      {"validate-thermal", "Compare the steady temperature profile with a shooting solution", run_validate_thermal},
      {"qfactor", "Fundamental frequency and Q^-1 of one configuration", run_qfactor},
      {"sweep", "Q^-1 and frequency over a sweep of one parameter", run_sweep},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", opt.config, "JSON configuration file (defaults if omitted)");
    sub->add_option("--set", opt.sets, "Override, dotted.key=value; repeatable")->take_all();
    sub->add_option("--jobs", opt.jobs, "Worker threads for sweeps (0: all cores)")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", opt.out, "CSV output path (stdout if omitted)");
    subs.emplace_back(sub, &c);
  }
  app.add_subcommand("defaults", "Print the default configuration")->callback([] {
    std::cout << tedcli::default_config().dump(2) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }
  if (opt.jobs == 0) opt.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  for (const auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    try {
      const json cfg = tedcli::load_config(opt.config, opt.sets);
      return cmd->run(cfg, opt);
    } catch (const ConfigError& e) {
      std::cerr << "tedfem: configuration error: " << e.what() << "\n";
      return kConfig;
    } catch (const Failure& e) {
      std::cerr << "tedfem: " << e.what() << "\n";
      return exit_code(e.status);
    } catch (const json::exception& e) {
      std::cerr << "tedfem: configuration error: " << e.what() << "\n";
      return kConfig;
    } catch (const std::exception& e) {
      std::cerr << "tedfem: " << e.what() << "\n";
      return kInternal;
    }
  }
  return kOk;
}
