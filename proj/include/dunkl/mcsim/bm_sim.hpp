#ifndef DUNKL_MCSIM_BM_SIM_HPP
#define DUNKL_MCSIM_BM_SIM_HPP

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dunkl/errors.hpp"
#include "dunkl/mcsim/config.hpp"
#include "dunkl/mcsim/parallel.hpp"
#include "dunkl/model.hpp"

namespace dunkl::mcsim {

namespace detail {

/// Returns false if some step moved the argument by more than the threshold.
inline bool bm_winding_attempt(const StartPoint& start, double horizon, double wedge, double dt, const McConfig& cfg,
                               std::mt19937_64& eng, WindingSample& out) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif;
  const double sw = std::sin(wedge), cw = std::cos(wedge);
  // Signed distances to the lines through the two walls, positive inside.
  auto d0 = [](double, double y) { return y; };
  auto d1 = [&](double x, double y) { return sw * x - cw * y; };

  double x = start.rho * std::cos(start.phi), y = start.rho * std::sin(start.phi);
  double theta = start.phi;
  double t = 0.0;
  bool inside = true;
  const long steps = static_cast<long>(std::ceil(horizon / dt - 1e-9));
  const double h = horizon / steps;
  const double sq = std::sqrt(h);
  for (long n = 0; n < steps; ++n) {
    const double xn = x + sq * normal(eng), yn = y + sq * normal(eng);
    const double u = unif(eng);
    // Increment of the argument: angle between successive position vectors.
    const double dtheta = std::atan2(x * yn - y * xn, x * xn + y * yn);
    if (std::abs(dtheta) >= cfg.lifting_threshold) return false;
    if (inside) {
      const double a0 = d0(x, y), b0 = d0(xn, yn), a1 = d1(x, y), b1 = d1(xn, yn);
      bool exited = b0 <= 0.0 || b1 <= 0.0;
      if (!exited) {
        const double stay = (1.0 - std::exp(-2.0 * a0 * b0 / h)) * (1.0 - std::exp(-2.0 * a1 * b1 / h));
        exited = u >= stay;
      }
      if (exited) {
        inside = false;
        out.exited_before_t = true;
        out.t0 = t + 0.5 * h;
      }
    }
    theta += dtheta;
    x = xn;
    y = yn;
    t += h;
  }
  out.theta_t = theta;
  return true;
}

}  // namespace detail

/// One planar Brownian path from rho e^{i phi} run to the horizon: continuously
/// lifted argument, and the first exit from the wedge (0, wedge).
inline WindingSample simulate_bm_winding_path(const StartPoint& start, double horizon, int p, const McConfig& cfg,
                                              std::size_t index) {
  const double wedge = std::numbers::pi / (2.0 * p);
  double dt = cfg.dt0;
  for (int halvings = 0; halvings <= cfg.max_halvings; ++halvings, dt *= 0.5) {
    // Each refinement draws a fresh stream so that a retried path stays a function of (seed, index).
    auto eng = path_engine(cfg.master_seed ^ (0x5851f42d4c957f2dULL * static_cast<std::uint64_t>(halvings)), index);
    WindingSample s;
    s.path_index = index;
    s.halvings = halvings;
    if (detail::bm_winding_attempt(start, horizon, wedge, dt, cfg, eng, s)) return s;
  }
  throw lifting_error("simulate_bm_winding: argument increment above threshold after " +
                      std::to_string(cfg.max_halvings) + " step halvings");
}

inline std::vector<WindingSample> simulate_bm_winding(const StartPoint& start, double horizon, int p,
                                                      const McConfig& cfg) {
  if (p < 1) throw domain_error("simulate_bm_winding: p must be >= 1");
  if (!(horizon > 0.0)) throw domain_error("simulate_bm_winding: t must be > 0");
  const WedgeModel m = WedgeModel::equal(p, 1.0);
  validate_start(m, start);
  cfg.validate(m.wedge_angle());
  return map_paths<WindingSample>(cfg.n_paths, cfg.threads,
                                  [&](std::size_t i) { return simulate_bm_winding_path(start, horizon, p, cfg, i); });
}

}  // namespace dunkl::mcsim

#endif  // DUNKL_MCSIM_BM_SIM_HPP
