// dunkl: hitting-time tails and densities, planar Brownian exit tails,
// simulations and self-checks from the command line.
//
//   dunkl density --p 2 --k 0.75 --phi-frac 1/8 --grid 0.01:20:400 --method integral
//   dunkl tail --p 2 --k0 0.6 --k1 0.9 --rho 1.3 --phi 0.3 --grid 0.05:3:60
//   dunkl bm-tail --p 2 --phi-frac 1/8 --t 0.5 --method squarewave
//   dunkl simulate --p 1 --k 0.75 --paths 20000 --output times.csv
//   dunkl check --suite lemma1
//
// Options can also come from a JSON file (--config run.json) whose keys are
// the long flag names with '-' replaced by '_'; flags given on the command
// line win. Exit status: 0 success, 1 numerical failure or failed check,
// 2 invalid configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dunkl/checks.hpp"
#include "dunkl/hittime.hpp"
#include "dunkl/mcsim.hpp"
#include "dunkl/model.hpp"
#include "dunkl/planarbm.hpp"

namespace {

using json = nlohmann::json;
using namespace dunkl;

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  std::vector<double> points() const {
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) g[i] = count == 1 ? start : start + (stop - start) * i / (count - 1.0);
    return g;
  }
};

Grid parse_grid(const std::string& s) {
  Grid g;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> g.start >> c1 >> g.stop >> c2 >> g.count) || c1 != ':' || c2 != ':' || !in.eof())
    throw config_error("grid '" + s + "': expected start:stop:count");
  if (g.count < 1) throw config_error("grid '" + s + "': count must be >= 1");
  if (g.count > 1 && !(g.stop > g.start)) throw config_error("grid '" + s + "': stop must exceed start");
  return g;
}

/// "a/b" means (a/b) pi; a bare number c means c pi.
double parse_phi_frac(const std::string& s) {
  std::istringstream in(s);
  double a = 0.0, b = 1.0;
  char slash = 0;
  if (!(in >> a)) throw config_error("phi-frac '" + s + "': expected a/b");
  if (in >> slash) {
    if (slash != '/' || !(in >> b) || !in.eof()) throw config_error("phi-frac '" + s + "': expected a/b");
  }
  if (b == 0.0) throw config_error("phi-frac '" + s + "': zero denominator");
  return a / b * std::numbers::pi;
}

struct RunConfig {
  std::string subcommand;
  int p = 2;
  double k0 = 0.75;
  double k1 = 0.75;
  double rho = 1.0;
  double phi = std::numbers::pi / 8.0;
  std::optional<std::string> grid;
  std::optional<double> t;
  std::optional<double> v;
  std::string method;
  std::string suite = "all";
  SeriesControl ctrl;
  mcsim::McConfig mc;
  std::string output;
  std::string format = "csv";
};

/// Applies a JSON object to the configuration. Unknown keys are errors.
void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw config_error("config file: top level must be an object");
  // k first, so that k0/k1 in the same file refine it.
  if (j.contains("k")) cfg.k0 = cfg.k1 = j.at("k").get<double>();
  bool phi_seen = false;
  for (const auto& [key, val] : j.items()) {
    if (key == "k") continue;
    if (key == "subcommand") {
      if (val.get<std::string>() != cfg.subcommand)
        throw config_error("config file is for '" + val.get<std::string>() + "', not '" + cfg.subcommand + "'");
    } else if (key == "p") cfg.p = val.get<int>();
    else if (key == "k0") cfg.k0 = val.get<double>();
    else if (key == "k1") cfg.k1 = val.get<double>();
    else if (key == "rho") cfg.rho = val.get<double>();
    else if (key == "phi" || key == "phi_frac") {
      if (phi_seen) throw config_error("config file: give phi or phi_frac, not both");
      phi_seen = true;
      cfg.phi = key == "phi" ? val.get<double>() : parse_phi_frac(val.get<std::string>());
    } else if (key == "grid") cfg.grid = val.get<std::string>();
    else if (key == "t") cfg.t = val.get<double>();
    else if (key == "v") cfg.v = val.get<double>();
    else if (key == "method") cfg.method = val.get<std::string>();
    else if (key == "suite") cfg.suite = val.get<std::string>();
    else if (key == "rel_tol") cfg.ctrl.rel_tol = val.get<double>();
    else if (key == "max_terms") cfg.ctrl.max_terms = val.get<int>();
    else if (key == "quad_nodes") cfg.ctrl.quad_nodes = val.get<int>();
    else if (key == "paths") cfg.mc.n_paths = val.get<std::size_t>();
    else if (key == "dt0") cfg.mc.dt0 = val.get<double>();
    else if (key == "t_max") cfg.mc.t_max = val.get<double>();
    else if (key == "seed") cfg.mc.master_seed = val.get<std::uint64_t>();
    else if (key == "threads") cfg.mc.threads = val.get<unsigned>();
    else if (key == "output") cfg.output = val.get<std::string>();
    else if (key == "format") cfg.format = val.get<std::string>();
    else throw config_error("config file: unknown key '" + key + "'");
  }
}

struct Table {
  std::vector<double> x;
  std::vector<double> y;
  std::optional<std::vector<double>> se;
};

void write_table(const RunConfig& cfg, const Table& tab, std::ostream& os) {
  if (cfg.format == "json") {
    json j{{"method", cfg.method}, {"p", cfg.p},     {"k0", cfg.k0},
           {"k1", cfg.k1},         {"rho", cfg.rho}, {"phi", cfg.phi},
           {"seed", cfg.mc.master_seed}, {"abscissa", tab.x}};
    // Censored hitting times are infinite; JSON writes them as null.
    json vals = json::array();
    for (double y : tab.y) vals.push_back(std::isfinite(y) ? json(y) : json(nullptr));
    j["value"] = vals;
    if (tab.se) j["std_error"] = *tab.se;
    os << j.dump(2) << '\n';
    return;
  }
  auto num = [](double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  os << "abscissa,value" << (tab.se ? ",std_error" : "") << ",method,p,k0,k1,rho,phi,seed\n";
  const std::string tail = "," + cfg.method + "," + std::to_string(cfg.p) + "," + num(cfg.k0) + "," + num(cfg.k1) +
                           "," + num(cfg.rho) + "," + num(cfg.phi) + "," + std::to_string(cfg.mc.master_seed) + "\n";
  for (std::size_t i = 0; i < tab.x.size(); ++i) {
    os << num(tab.x[i]) << ',' << num(tab.y[i]);
    if (tab.se) os << ',' << num((*tab.se)[i]);
    os << tail;
  }
}

std::vector<double> abscissae(const RunConfig& cfg, const std::optional<double>& single, const char* name) {
  if (single && cfg.grid) throw config_error(std::string("give --grid or --") + name + ", not both");
  if (single) return {*single};
  if (!cfg.grid) throw config_error(std::string("one of --grid or --") + name + " is required");
  return parse_grid(*cfg.grid).points();
}

void require_method(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* m : allowed)
    if (cfg.method == m) return;
  std::string list;
  for (const char* m : allowed) list += std::string(list.empty() ? "" : "|") + m;
  throw config_error("method '" + cfg.method + "' is not valid for '" + cfg.subcommand + "' (" + list + ")");
}

Table run_density(const RunConfig& cfg) {
  require_method(cfg, {"series", "integral", "bessel"});
  const WedgeModel m{cfg.p, cfg.k0, cfg.k1};
  validate_model(m);
  validate_start(m, {cfg.rho, cfg.phi});
  const auto tag = cfg.method == "series"     ? hittime::DensityTag::tail
                   : cfg.method == "integral" ? hittime::DensityTag::integral
                                              : hittime::DensityTag::bessel;
  Table tab{abscissae(cfg, cfg.v, "v"), {}, std::nullopt};
  for (double v : tab.x) tab.y.push_back(hittime::density_v0(tag, v, m, cfg.phi, cfg.ctrl));
  return tab;
}

Table run_tail(const RunConfig& cfg) {
  require_method(cfg, {"series", "mc"});
  const WedgeModel m{cfg.p, cfg.k0, cfg.k1};
  validate_model(m);
  const StartPoint x{cfg.rho, cfg.phi};
  validate_start(m, x);
  Table tab{abscissae(cfg, cfg.t, "t"), {}, std::nullopt};
  if (cfg.method == "series") {
    for (double t : tab.x) tab.y.push_back(hittime::tail_hitting_normalized(t, m, x, cfg.ctrl));
    return tab;
  }
  const Curve c = mcsim::estimate_tail(mcsim::simulate_hitting(m, x, cfg.mc), tab.x, cfg.mc.t_max);
  tab.y = c.values;
  tab.se = c.std_errors;
  return tab;
}

Table run_bm_tail(const RunConfig& cfg) {
  require_method(cfg, {"bessel", "squarewave", "mc"});
  Table tab{abscissae(cfg, cfg.t, "t"), {}, std::nullopt};
  if (cfg.method == "mc") tab.se.emplace();
  for (double t : tab.x) {
    if (cfg.method == "bessel") {
      tab.y.push_back(planarbm::bm_tail_bessel(t, cfg.p, cfg.rho, cfg.phi, cfg.ctrl));
    } else if (cfg.method == "squarewave") {
      tab.y.push_back(planarbm::bm_tail_squarewave(t, cfg.p, cfg.rho, cfg.phi, cfg.ctrl));
    } else {
      const auto e = mcsim::estimate_exit_tail(mcsim::simulate_bm_winding({cfg.rho, cfg.phi}, t, cfg.p, cfg.mc));
      tab.y.push_back(e.value);
      tab.se->push_back(e.std_error);
    }
  }
  return tab;
}

/// One row per path: index and hitting time (inf if censored at t_max).
Table run_simulate(const RunConfig& cfg) {
  require_method(cfg, {"mc"});
  const WedgeModel m{cfg.p, cfg.k0, cfg.k1};
  const auto samples = mcsim::simulate_hitting(m, {cfg.rho, cfg.phi}, cfg.mc);
  Table tab;
  for (const auto& s : samples) {
    tab.x.push_back(static_cast<double>(s.path_index));
    tab.y.push_back(s.censored ? std::numeric_limits<double>::infinity() : s.t0);
  }
  return tab;
}

int run_check(const RunConfig& cfg) {
  checks::McCrossOptions o;
  o.n_paths = cfg.mc.n_paths;
  o.seed = cfg.mc.master_seed;
  o.threads = cfg.mc.threads;
  std::vector<std::string> names;
  if (cfg.suite == "all")
    for (const auto& s : checks::suites()) names.emplace_back(s.name);
  else
    names.push_back(cfg.suite);
  for (const auto& name : names) {
    bool known = false;
    for (const auto& s : checks::suites()) known = known || name == s.name;
    if (!known) throw config_error("unknown check suite '" + name + "'");
  }
  bool ok = true;
  std::printf("%-12s %-58s %12s %10s  %s\n", "suite", "check", "value", "tolerance", "result");
  for (const auto& name : names) {
    const auto r = checks::run_suite(name, o);
    for (const auto& row : r.rows)
      std::printf("%-12s %-58s %12.4g %10.3g  %s\n", name.c_str(), row.name.c_str(), row.value, row.tolerance,
                  row.pass ? "pass" : "FAIL");
    std::printf("%-12s max value %.4g, %.1f s: %s\n", name.c_str(), r.worst(), r.seconds,
                r.passed() ? "pass" : "FAIL");
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Hitting times of the boundary of dihedral wedges"};
  app.require_subcommand(1, 1);
  const std::vector<std::pair<const char*, const char*>> subs{
      {"density", "normalized density of V0 = rho^2/(2 T0) on a v-grid"},
      {"tail", "P(T0 > t) on a t-grid"},
      {"bm-tail", "exit tail of planar Brownian motion"},
      {"simulate", "simulated hitting times, one row per path"},
      {"check", "run a self-check suite"}};
  for (const auto& [name, help] : subs) app.add_subcommand(name, help)->fallthrough();

  std::string config_path;
  auto* o_config = app.add_option("--config", config_path, "JSON file with default options");

  // Defaults are bound after the JSON file is applied, so flags override it.
  int p = 0;
  double k = 0, k0 = 0, k1 = 0, rho = 0, phi = 0, t = 0, v = 0;
  std::string phi_frac, grid, method, suite, output, format;
  double rel_tol = 0, dt0 = 0, t_max = 0;
  int max_terms = 0, quad_nodes = 0;
  std::size_t paths = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  auto* o_p = app.add_option("--p", p, "wedge angle pi/(2p)");
  auto* o_k = app.add_option("--k", k, "both multiplicities");
  auto* o_k0 = app.add_option("--k0", k0, "multiplicity of the wall theta = 0");
  auto* o_k1 = app.add_option("--k1", k1, "multiplicity of the wall theta = pi/(2p)");
  auto* o_rho = app.add_option("--rho", rho, "starting radius");
  auto* o_phi = app.add_option("--phi", phi, "starting angle");
  auto* o_pf = app.add_option("--phi-frac", phi_frac, "starting angle as a/b, meaning (a/b) pi");
  o_phi->excludes(o_pf);
  auto* o_grid = app.add_option("--grid", grid, "start:stop:count");
  auto* o_t = app.add_option("--t", t, "single time");
  auto* o_v = app.add_option("--v", v, "single value of v");
  auto* o_method = app.add_option("--method", method, "series|integral|bessel|squarewave|mc");
  auto* o_suite = app.add_option("--suite", suite, "identities|lemma1|corollaries|spitzer|mc-cross|structural|all");
  auto* o_rel = app.add_option("--rel-tol", rel_tol, "series/quadrature relative tolerance");
  auto* o_terms = app.add_option("--max-terms", max_terms, "series term cap");
  auto* o_nodes = app.add_option("--quad-nodes", quad_nodes, "initial quadrature nodes");
  auto* o_paths = app.add_option("--paths", paths, "Monte Carlo paths");
  auto* o_dt0 = app.add_option("--dt0", dt0, "Monte Carlo base step");
  auto* o_tmax = app.add_option("--t-max", t_max, "censoring horizon");
  auto* o_seed = app.add_option("--seed", seed, "master seed");
  auto* o_threads = app.add_option("--threads", threads, "worker threads (0: automatic)");
  auto* o_out = app.add_option("--output,-o", output, "output file (default stdout)");
  auto* o_fmt = app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (*o_config) {
      std::ifstream in(config_path);
      if (!in) throw config_error("cannot read config file '" + config_path + "'");
      json j;
      try {
        j = json::parse(in);
        apply_json(cfg, j);
      } catch (const json::exception& e) {
        throw config_error(std::string("config file: ") + e.what());
      }
    }
    if (*o_p) cfg.p = p;
    if (*o_k) cfg.k0 = cfg.k1 = k;
    if (*o_k0) cfg.k0 = k0;
    if (*o_k1) cfg.k1 = k1;
    if (*o_rho) cfg.rho = rho;
    if (*o_phi) cfg.phi = phi;
    if (*o_pf) cfg.phi = parse_phi_frac(phi_frac);
    if (*o_grid) cfg.grid = grid;
    if (*o_t) cfg.t = t;
    if (*o_v) cfg.v = v;
    if (*o_method) cfg.method = method;
    if (*o_suite) cfg.suite = suite;
    if (*o_rel) cfg.ctrl.rel_tol = rel_tol;
    if (*o_terms) cfg.ctrl.max_terms = max_terms;
    if (*o_nodes) cfg.ctrl.quad_nodes = quad_nodes;
    if (*o_paths) cfg.mc.n_paths = paths;
    if (*o_dt0) cfg.mc.dt0 = dt0;
    if (*o_tmax) cfg.mc.t_max = t_max;
    if (*o_seed) cfg.mc.master_seed = seed;
    if (*o_threads) cfg.mc.threads = threads;
    if (*o_out) cfg.output = output;
    if (*o_fmt) cfg.format = format;
    if (cfg.format != "csv" && cfg.format != "json") throw config_error("format must be csv or json");
    cfg.ctrl.validate();

    if (cfg.method.empty()) {
      if (cfg.subcommand == "density" || cfg.subcommand == "tail") cfg.method = "series";
      else if (cfg.subcommand == "bm-tail") cfg.method = "bessel";
      else if (cfg.subcommand == "simulate") cfg.method = "mc";
    }
    if (cfg.subcommand == "check") return run_check(cfg);

    Table tab;
    if (cfg.subcommand == "density") tab = run_density(cfg);
    else if (cfg.subcommand == "tail") tab = run_tail(cfg);
    else if (cfg.subcommand == "bm-tail") tab = run_bm_tail(cfg);
    else tab = run_simulate(cfg);

    if (cfg.output.empty()) {
      write_table(cfg, tab, std::cout);
    } else {
      std::ofstream out(cfg.output);
      if (!out) throw config_error("cannot write '" + cfg.output + "'");
      write_table(cfg, tab, out);
    }
    return 0;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 1;
  }
}
