#ifndef DUNKL_MCSIM_DUNKL_SIM_HPP
#define DUNKL_MCSIM_DUNKL_SIM_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dunkl/errors.hpp"
#include "dunkl/mcsim/config.hpp"
#include "dunkl/mcsim/parallel.hpp"
#include "dunkl/model.hpp"
#include "dunkl/specfun/bessel.hpp"

// Radial Dunkl process with the flipped multiplicities k'_j = 1 - k_j, in polar form
//   dr = (2 gamma' + 1)/(2r) dt + dB1,
//   dtheta = p (k'_0 cot(p theta) - k'_1 tan(p theta)) / r^2 dt + dB2 / r,
// run in the angular clock du = dt / r^2. There log r is a Brownian motion with
// drift gamma' = p (k'_0 + k'_1), independent of the angle, and real time is
// t = rho^2 int exp(2 log(r/rho)) du.
//
// In the clock u, the distance x to the nearer wall solves
//   dx = k'/x du + b(x) du + dW,   b(x) = k'(p cot(px) - 1/x) - p k'' tan(px),
// with k' the multiplicity of that wall and k'' of the other one. The singular
// part is a Bessel process of dimension 2k' + 1 < 2, which is stepped exactly:
// the reflected transition is a scaled noncentral chi-square, and the path is
// killed at the wall with probability 1 - I_{nu}(z)/I_{-nu}(z), z = x y/du,
// nu = 1/2 - k'. The bounded remainder b is applied by a Strang splitting.

namespace dunkl::mcsim {

namespace detail {

struct WallFrame {
  double k_near = 0.0;  // flipped multiplicity of the near wall
  double k_far = 0.0;   // flipped multiplicity of the other wall
};

inline double remainder_drift(double x, double p, const WallFrame& wf) {
  const double px = p * x;
  // p cot(px) - 1/x, by its series near 0 where the difference cancels.
  const double cot_part = px < 1e-3 ? -p * px / 3.0 * (1.0 + px * px / 15.0) : p / std::tan(px) - 1.0 / x;
  return wf.k_near * cot_part - p * wf.k_far * std::tan(px);
}

/// Probability that a Bessel bridge of dimension 2k+1 from x to y over du avoids 0.
inline double bessel_bridge_survival(double k, double x, double y, double du) {
  const double nu = 0.5 - k;
  if (nu <= 0.0) return 1.0;
  const double z = x * y / du;
  if (z > 40.0) return 1.0;  // 1 - O(e^{-2z})
  return specfun::bessel_i_scaled(nu, z) / specfun::bessel_i_scaled(-nu, z);
}

struct AngularStep {
  double x_new = 0.0;
  bool hit = false;
};

template <typename Engine>
AngularStep step_near_wall(double x, double du, double p, const WallFrame& wf, Engine& eng) {
  const double half = 0.5 * du;
  const double x1 = x + remainder_drift(x, p, wf) * half;
  // Reflected Bessel(2k+1): y^2 / du ~ noncentral chi-square(2k+1, x1^2/du).
  const double lam = x1 * x1 / du;
  const long n = lam > 0.0 ? std::poisson_distribution<long>(0.5 * lam)(eng) : 0;
  const double g = std::gamma_distribution<double>(wf.k_near + 0.5 + n, 2.0)(eng);
  const double y = std::sqrt(du * g);
  const double u = std::uniform_real_distribution<double>()(eng);
  if (u >= bessel_bridge_survival(wf.k_near, x1, y, du)) return {0.0, true};
  return {y + remainder_drift(y, p, wf) * half, false};
}

}  // namespace detail

/// First hitting time of the wedge boundary along one path.
inline HittingSample simulate_hitting_path(const WedgeModel& model, const StartPoint& start, const McConfig& cfg,
                                           std::size_t index) {
  const double p = model.p;
  const double w = model.wedge_angle();
  const double k0f = model.flipped_k0(), k1f = model.flipped_k1();
  const double gamma_f = p * (k0f + k1f);
  const detail::WallFrame wall0{k0f, k1f}, wall1{k1f, k0f};
  const double rho2 = start.rho * start.rho;
  const double du = std::min(cfg.dt0 / rho2, cfg.step_factor * 0.25 * w * w);
  const double sq = std::sqrt(du);

  auto eng = path_engine(cfg.master_seed, index);
  std::normal_distribution<double> normal;

  double theta = start.phi, ell = 0.0, t = 0.0;
  for (;;) {
    const bool near0 = theta <= w - theta;
    const double x = near0 ? theta : w - theta;
    const double ell_new = ell + gamma_f * du + sq * normal(eng);
    const double dt = 0.5 * rho2 * (std::exp(2.0 * ell) + std::exp(2.0 * ell_new)) * du;
    const auto step = detail::step_near_wall(x, du, p, near0 ? wall0 : wall1, eng);
    // The exit time within the step is placed at its midpoint.
    if (step.hit || step.x_new <= cfg.eps_boundary || step.x_new >= w - cfg.eps_boundary) {
      const double th = t + 0.5 * dt;
      if (th >= cfg.t_max) return {cfg.t_max, true, index};
      return {th, false, index};
    }
    t += dt;
    if (t >= cfg.t_max) return {cfg.t_max, true, index};
    ell = ell_new;
    theta = near0 ? step.x_new : w - step.x_new;
  }
}

/// n_paths independent hitting times; sample i depends only on (master_seed, i).
inline std::vector<HittingSample> simulate_hitting(const WedgeModel& model, const StartPoint& start,
                                                   const McConfig& cfg) {
  validate_model(model);
  validate_start(model, start);
  cfg.validate(model.wedge_angle());
  return map_paths<HittingSample>(cfg.n_paths, cfg.threads,
                                  [&](std::size_t i) { return simulate_hitting_path(model, start, cfg, i); });
}

}  // namespace dunkl::mcsim

#endif  // DUNKL_MCSIM_DUNKL_SIM_HPP
