#ifndef DUNKL_CHECKS_HPP
#define DUNKL_CHECKS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dunkl/errors.hpp"
#include "dunkl/hittime.hpp"
#include "dunkl/mcsim.hpp"
#include "dunkl/model.hpp"
#include "dunkl/planarbm.hpp"
#include "dunkl/specfun.hpp"

// Self-checks of the library against its own identities, alternative routes
// and simulation. Each check is a row: the measured discrepancy and the bound
// it must stay under. The CLI and the acceptance runner share these suites.

namespace dunkl::checks {

struct CheckRow {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckRow> rows;
  double seconds = 0.0;

  bool passed() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
  }
  double worst() const {
    double w = 0.0;
    for (const auto& r : rows) w = std::max(w, r.value);
    return w;
  }
  void add(std::string row_name, double value, double tolerance) {
    // NaN never passes.
    rows.push_back({std::move(row_name), value, tolerance, value <= tolerance});
  }
};

/// Monte Carlo settings for the simulation cross-checks.
struct McCrossOptions {
  std::size_t n_paths = 100000;
  double dt0_dunkl = 2e-3;
  double dt0_bm = 1e-4;
  double t_max = 20.0;
  std::uint64_t seed = 20261017;
  unsigned threads = 0;
  /// Paths re-simulated to confirm bit-identical reruns.
  std::size_t rerun_paths = 2000;
};

namespace detail {

template <typename F>
SuiteResult timed(std::string name, F&& body) {
  SuiteResult out{std::move(name), {}, 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  body(out);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, i / (n - 1.0));
  return g;
}

/// Largest |r_i / mean(r) - 1| over the ratios r_i = a_i / b_i.
inline double ratio_spread(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r(a.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) mean += (r[i] = a[i] / b[i]);
  mean /= r.size();
  double worst = 0.0;
  for (double x : r) worst = std::max(worst, std::abs(x / mean - 1.0));
  return worst;
}

/// Standard deviation of log(a_i / b_i).
inline double log_ratio_sd(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> l(a.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) mean += (l[i] = std::log(a[i] / b[i]));
  mean /= l.size();
  double ss = 0.0;
  for (double x : l) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (l.size() - 1.0));
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Regularized lower incomplete gamma by Gauss-Jacobi quadrature of
/// x^a int_0^1 s^{a-1} e^{-xs} ds, independent of the series/continued fraction.
inline double gamma_cdf_quadrature(double a, double x) {
  if (x == 0.0) return 0.0;
  const double body =
      specfun::integrate_jacobi_interval(0.0, 1.0, 0.0, a - 1.0, 96, [x](double s) { return std::exp(-x * s); });
  return std::exp(a * std::log(x) - std::lgamma(a)) * body;
}

}  // namespace detail

/// The V0 density of the quarter plane built from scratch: T0 is the smaller
/// of two independent inverse-Gamma times rho^2 sin^2(phi) / (2 G) and
/// rho^2 cos^2(phi) / (2 G'), G, G' ~ Gamma(nu). The t-density of the minimum
/// is mapped to v = rho^2 / (2t).
inline double z2z2_density_brute_force(double v, double nu, double phi, double rho = 1.0) {
  const double t = t_from_v(rho, v);
  const double a1 = 0.5 * rho * rho * std::sin(phi) * std::sin(phi);
  const double a2 = 0.5 * rho * rho * std::cos(phi) * std::cos(phi);
  auto pdf = [&](double a) { return std::exp(nu * std::log(a) - (nu + 1.0) * std::log(t) - a / t - std::lgamma(nu)); };
  auto survival = [&](double a) { return detail::gamma_cdf_quadrature(nu, a / t); };
  const double f_t = pdf(a1) * survival(a2) + pdf(a2) * survival(a1);
  return f_t * rho * rho / (2.0 * v * v);
}

/// Special-function identities, each at its worst over random draws.
inline SuiteResult identities(std::uint64_t seed = 20261017, int draws = 50) {
  return detail::timed("identities", [&](SuiteResult& out) {
    std::mt19937_64 rng(seed);
    auto U = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    auto I = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto worst = [&](auto&& draw) {
      double w = 0.0;
      for (int i = 0; i < draws; ++i) w = std::max(w, draw());
      return w;
    };
    using namespace specfun;
    out.add("Leg", worst([&] { return legendre_duplication_residual(U(1e-3, 50.0)); }), 1e-9);
    out.add("Kum1", worst([&] { return kummer1_residual(U(0.1, 5.0), U(0.2, 8.0), U(0.0, 10.0)); }), 1e-9);
    out.add("Kum2", worst([&] { return kummer2_residual(U(0.01, 3.0), U(-20.0, -1e-3)); }), 1e-9);
    out.add("Quad", worst([&] { return quadratic_transform_residual(U(0.1, 3.0), U(0.1, 4.0), U(-0.9, 0.6)); }),
            1e-9);
    out.add("Poisson", worst([&] { return poisson_residual(U(0.05, 3.0), U(0.0, 30.0)); }), 1e-9);
    out.add("Differ", worst([&] { return differentiation_residual(I(0, 10), U(0.2, 3.0), U(0.2, 3.0), U(-0.9, 0.9)); }),
            1e-6);
    out.add("SpeVal", worst([&] { return special_values_residual(I(0, 30), U(-0.9, 3.0), U(-0.9, 3.0)); }), 1e-9);
    out.add("SN", worst([&] { return orthonormality_residual(I(1, 12), U(-0.9, 2.0), U(-0.9, 2.0)); }), 1e-9);
    out.add("IR1", worst([&] { return xu_identity_check(I(0, 12), U(0.5, 1.5), U(-1.0, 1.0)); }), 1e-9);
    out.add("EMT", worst([&] {
              return erdelyi_multiplication_check(U(0.2, 3.0), U(0.2, 3.0), U(0.2, 3.0), U(0.0, 0.95), U(0.0, 10.0));
            }),
            1e-9);
  });
}

/// Both sides of the series/Beta-integral identity on a 4 x 3 x 3 grid.
inline SuiteResult lemma1() {
  return detail::timed("lemma1", [&](SuiteResult& out) {
    const double pi = std::numbers::pi;
    for (double v : {0.1, 1.0, 5.0, 10.0}) {
      double w = 0.0;
      for (double k : {0.6, 0.8, 1.0})
        for (double phi : {0.1, pi / 8.0, 0.7})
          w = std::max(w, detail::rel(hittime::lemma1_lhs(v, k, phi), hittime::lemma1_rhs(v, k, phi)));
      out.add("v=" + std::to_string(v).substr(0, 4), w, 1e-8);
    }
  });
}

/// Series, integral and Bessel forms of the V0 density in the pi/4 wedge
/// are proportional and positive.
inline SuiteResult routes() {
  return detail::timed("routes", [&](SuiteResult& out) {
    const auto grid = detail::log_grid(0.01, 20.0, 50);
    for (double nu : {0.3, 0.45, 0.5})
      for (double phi : {std::numbers::pi / 8.0, 0.3}) {
        std::vector<double> s, in, b;
        for (double v : grid) {
          s.push_back(hittime::density_series_equal_k(v, 2, nu + 0.5, phi));
          in.push_back(hittime::density_v0_integral(v, nu, phi));
          b.push_back(hittime::density_v0_bessel(v, nu, phi));
        }
        const std::string tag = "nu=" + std::to_string(nu).substr(0, 4) + " phi=" + std::to_string(phi).substr(0, 6);
        double neg = 0.0;
        for (const auto* f : {&s, &in, &b})
          for (double x : *f) neg += x > 0.0 ? 0.0 : 1.0;
        out.add(tag + " non-positive values", neg, 0.0);
        out.add(tag + " sd log(series/integral)", detail::log_ratio_sd(s, in), 1e-6);
        out.add(tag + " sd log(series/bessel)", detail::log_ratio_sd(s, b), 1e-6);
        out.add(tag + " sd log(integral/bessel)", detail::log_ratio_sd(in, b), 1e-6);
      }
  });
}

/// Numeric Laplace-type moment against the closed form, and the planar
/// Brownian reduction.
inline SuiteResult laplace() {
  return detail::timed("laplace", [&](SuiteResult& out) {
    const std::vector<double> ys{0.0, 0.5, 1.0, 2.0, 5.0};
    for (double nu : {0.3, 0.4, 0.5}) {
      std::vector<double> num, closed;
      for (double y : ys) {
        num.push_back(hittime::laplace_moment_numeric(y, nu));
        closed.push_back(hittime::laplace_moment_pi8(y, nu));
      }
      out.add("nu=" + std::to_string(nu).substr(0, 3) + " ratio numeric/closed", detail::ratio_spread(num, closed),
              1e-4);
    }
    std::vector<double> closed, vy;
    for (double y : ys) {
      closed.push_back(hittime::laplace_moment_pi8(y, 0.5));
      vy.push_back(hittime::laplace_moment_brownian(y));
    }
    out.add("nu=0.5 closed/Brownian form", detail::ratio_spread(closed, vy), 1e-8);
  });
}

/// Quarter-plane density against the inverse-Gamma construction.
inline SuiteResult z2z2() {
  return detail::timed("z2z2", [&](SuiteResult& out) {
    const auto grid = detail::log_grid(0.05, 20.0, 40);
    for (double nu : {0.15, 0.25, 0.4})
      for (double phi : {std::numbers::pi / 6.0, std::numbers::pi / 4.0}) {
        std::vector<double> d, brute;
        for (double v : grid) {
          d.push_back(hittime::density_v0_z2z2(v, nu, phi));
          brute.push_back(z2z2_density_brute_force(v, nu, phi));
        }
        out.add("nu=" + std::to_string(nu).substr(0, 4) + " phi=" + std::to_string(phi).substr(0, 6),
                detail::ratio_spread(d, brute), 1e-8);
      }
  });
}

/// routes + laplace + z2z2.
inline SuiteResult corollaries() {
  return detail::timed("corollaries", [&](SuiteResult& out) {
    for (auto* part : {&routes, &laplace, &z2z2}) {
      const SuiteResult r = (*part)();
      for (auto row : r.rows) {
        row.name = r.name + ": " + row.name;
        out.rows.push_back(std::move(row));
      }
    }
  });
}

/// The Brownian exit tail by the Bessel series, the square wave
/// and the k = 1 Dunkl tail.
inline SuiteResult spitzer() {
  return detail::timed("spitzer", [&](SuiteResult& out) {
    const double pi = std::numbers::pi;
    const WedgeModel bm = WedgeModel::equal(2, 1.0);
    double w_sq = 0.0, w_dunkl = 0.0;
    for (double rho : {1.0, 1.7})
      for (double tr : {0.1, 0.5, 1.0, 2.0})
        for (double phi : {pi / 16.0, pi / 8.0, 3.0 * pi / 16.0}) {
          const double t = tr * rho * rho;
          const double b = planarbm::bm_tail_bessel(t, 2, rho, phi);
          const double s = planarbm::bm_tail_squarewave(t, 2, rho, phi);
          const double d = hittime::tail_hitting_normalized(t, bm, {rho, phi});
          w_sq = std::max(w_sq, std::abs(b - s));
          w_dunkl = std::max({w_dunkl, std::abs(d - b), std::abs(d - s)});
        }
    out.add("|bessel - squarewave|", w_sq, 1e-8);
    out.add("|dunkl k=1 - brownian|", w_dunkl, 1e-7);
    double w_cf = 0.0;
    for (double rho : {0.5, 1.0, 3.0})
      for (double t : {0.01, 1.0, 40.0}) w_cf = std::max(w_cf, std::abs(planarbm::spitzer_cf(0.0, rho, t) - 1.0));
    out.add("|spitzer_cf(0) - 1|", w_cf, 1e-12);
  });
}

/// Exit time at which the Brownian tail equals 1/2.
inline double bm_half_time(int p, double rho, double phi) {
  double lo = 1e-3 * rho * rho, hi = 1e3 * rho * rho;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = std::sqrt(lo * hi);
    (planarbm::bm_tail_bessel(mid, p, rho, phi) > 0.5 ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

namespace detail {

inline mcsim::McConfig dunkl_config(const McCrossOptions& o) {
  mcsim::McConfig cfg;
  cfg.n_paths = o.n_paths;
  cfg.dt0 = o.dt0_dunkl;
  cfg.t_max = o.t_max;
  cfg.master_seed = o.seed;
  cfg.threads = o.threads;
  return cfg;
}

/// Simulated tail against an exact tail at each grid time, plus a rerun of
/// the first paths.
inline void hitting_cross(SuiteResult& out, const WedgeModel& m, const StartPoint& x, const std::vector<double>& times,
                          const McCrossOptions& o, const std::function<double(double)>& exact) {
  const mcsim::McConfig cfg = dunkl_config(o);
  const auto samples = mcsim::simulate_hitting(m, x, cfg);
  const Curve c = mcsim::estimate_tail(samples, times, cfg.t_max);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double se = (*c.std_errors)[i];
    out.add("t=" + std::to_string(times[i]).substr(0, 5) + " |mc - exact|/SE", std::abs(c.values[i] - exact(times[i])) / se,
            3.0);
  }
  mcsim::McConfig again = cfg;
  again.n_paths = std::min(o.rerun_paths, cfg.n_paths);
  const auto rerun = mcsim::simulate_hitting(m, x, again);
  const bool same = std::equal(rerun.begin(), rerun.end(), samples.begin());
  out.add("rerun differs from first run", same ? 0.0 : 1.0, 0.0);
}

}  // namespace detail

/// p = 2, k = 3/4 started on the bisector.
inline SuiteResult mc_dunkl(const McCrossOptions& o = {}) {
  return detail::timed("mc-dunkl", [&](SuiteResult& out) {
    const WedgeModel m = WedgeModel::equal(2, 0.75);
    const StartPoint x{1.0, std::numbers::pi / 8.0};
    const std::vector<double> times{0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
    detail::hitting_cross(out, m, x, times, o, [&](double t) { return hittime::tail_hitting_normalized(t, m, x); });
  });
}

/// Planar Brownian motion at the time where half the paths
/// have left the pi/4 wedge.
///
/// The third row tests E[W_p(Theta_t) 1{T0 < t}] = P(T0 > t) as stated. The
/// reflection principle makes the left side vanish, so this row is expected
/// to fail.
inline SuiteResult mc_brownian(const McCrossOptions& o = {}) {
  return detail::timed("mc-brownian", [&](SuiteResult& out) {
    const int p = 2;
    const StartPoint x{1.0, std::numbers::pi / 8.0};
    const double t = bm_half_time(p, x.rho, x.phi);
    mcsim::McConfig cfg;
    cfg.n_paths = o.n_paths;
    cfg.dt0 = o.dt0_bm;
    cfg.master_seed = o.seed;
    cfg.threads = o.threads;
    const auto s = mcsim::simulate_bm_winding(x, t, p, cfg);

    const double exact_tail = planarbm::bm_tail_bessel(t, p, x.rho, x.phi);
    const mcsim::Estimate tail = mcsim::estimate_exit_tail(s);
    out.add("exit tail |mc - bessel|/SE", std::abs(tail.value - exact_tail) / tail.std_error, 3.0);

    const double lambda = 2.0 * p;
    const mcsim::Estimate cf = mcsim::estimate_winding_cf(s, lambda, x.phi);
    out.add("cf(2p) |mc - spitzer|/SE", std::abs(cf.value - planarbm::spitzer_cf(lambda, x.rho, t)) / cf.std_error,
            3.0);

    const mcsim::Estimate ind = mcsim::estimate_wp_indicator(s, p);
    const double combined = std::hypot(ind.std_error, tail.std_error);
    char label[96];
    std::snprintf(label, sizeof label, "|E[W_p 1{T0<t}] - P(T0>t)|/SE (%.4f vs %.4f)", ind.value, tail.value);
    out.add(label, std::abs(ind.value - tail.value) / combined, 3.0);

    mcsim::McConfig again = cfg;
    again.n_paths = std::min(o.rerun_paths, cfg.n_paths);
    const auto rerun = mcsim::simulate_bm_winding(x, t, p, again);
    out.add("rerun differs from first run", std::equal(rerun.begin(), rerun.end(), s.begin()) ? 0.0 : 1.0, 0.0);
  });
}

/// Quarter plane, k = 3/4.
inline SuiteResult mc_quarter_plane(const McCrossOptions& o = {}) {
  return detail::timed("mc-quarter-plane", [&](SuiteResult& out) {
    const WedgeModel m = WedgeModel::equal(1, 0.75);
    const StartPoint x{1.0, std::numbers::pi / 6.0};
    const std::vector<double> times{0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
    detail::hitting_cross(out, m, x, times, o, [&](double t) { return hittime::tail_z2z2(t, m.nu0(), x); });
  });
}

/// mc-dunkl + mc-brownian + mc-quarter-plane.
inline SuiteResult mc_cross(const McCrossOptions& o = {}) {
  return detail::timed("mc-cross", [&](SuiteResult& out) {
    for (auto* part : {&mc_dunkl, &mc_brownian, &mc_quarter_plane}) {
      const SuiteResult r = (*part)(o);
      for (auto row : r.rows) {
        row.name = r.name + ": " + row.name;
        out.rows.push_back(std::move(row));
      }
    }
  });
}

/// Zero odd coefficients, phi-free normalization, and tails
/// that are monotone and inside [0, 1].
inline SuiteResult structural() {
  return detail::timed("structural", [&](SuiteResult& out) {
    double odd = 0.0;
    for (int p : {1, 2, 3, 5})
      for (double k : {0.55, 0.75, 0.9, 1.0})
        for (int j = 1; j <= 20; j += 2) odd = std::max(odd, std::abs(hittime::coeff_F(j, WedgeModel::equal(p, k))));
    out.add("max |F(odd j)|", odd, 1e-12);

    const std::vector<WedgeModel> models{WedgeModel::equal(2, 0.75), WedgeModel::equal(1, 0.6), WedgeModel::equal(3, 0.9),
                                         WedgeModel{2, 0.65, 0.9}, WedgeModel{1, 0.55, 1.0}};
    double spread = 0.0;
    for (const auto& m : models) {
      std::vector<double> c;
      for (double f : {0.15, 0.3, 0.5, 0.7, 0.85})
        c.push_back(hittime::compute_normalization(hittime::DensityTag::tail, m, f * m.wedge_angle()).constant);
      spread = std::max(spread, (*std::max_element(c.begin(), c.end()) - *std::min_element(c.begin(), c.end())) /
                                    *std::min_element(c.begin(), c.end()));
    }
    out.add("normalization spread over phi", spread, 1e-6);

    // Equal values up to the series rounding count as ties.
    double rise = 0.0, outside = 0.0;
    const auto grid = detail::log_grid(1e-3, 1e3, 120);
    for (const auto& m : models)
      for (double f : {0.1, 0.5, 0.8}) {
        const StartPoint x{1.0, f * m.wedge_angle()};
        double prev = 1.0;
        for (double t : grid) {
          const double s = hittime::tail_hitting_normalized(t, m, x);
          rise = std::max(rise, s - prev);
          outside = std::max({outside, -s, s - 1.0});
          prev = s;
        }
      }
    out.add("largest increase of the tail in t", rise, 1e-12);
    out.add("distance of the tail outside [0, 1]", outside, 0.0);
  });
}

struct SuiteEntry {
  const char* name;
  std::function<SuiteResult(const McCrossOptions&)> run;
};

/// Suites reachable by name: identities, lemma1, corollaries, spitzer,
/// mc-cross and structural.
inline const std::vector<SuiteEntry>& suites() {
  static const std::vector<SuiteEntry> all{
      {"identities", [](const McCrossOptions& o) { return identities(o.seed); }},
      {"lemma1", [](const McCrossOptions&) { return lemma1(); }},
      {"corollaries", [](const McCrossOptions&) { return corollaries(); }},
      {"spitzer", [](const McCrossOptions&) { return spitzer(); }},
      {"mc-cross", [](const McCrossOptions& o) { return mc_cross(o); }},
      {"structural", [](const McCrossOptions&) { return structural(); }},
  };
  return all;
}

inline SuiteResult run_suite(const std::string& name, const McCrossOptions& o = {}) {
  for (const auto& s : suites())
    if (name == s.name) return s.run(o);
  throw config_error("unknown check suite '" + name + "'");
}

}  // namespace dunkl::checks

#endif  // DUNKL_CHECKS_HPP
