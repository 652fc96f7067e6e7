#ifndef DUNKL_MCSIM_CONFIG_HPP
#define DUNKL_MCSIM_CONFIG_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "dunkl/errors.hpp"

namespace dunkl::mcsim {

struct McConfig {
  std::size_t n_paths = 100000;
  /// Cap on the step; for the Dunkl simulator it caps the angular clock du <= dt0 / rho^2.
  double dt0 = 1e-3;
  /// Paths are absorbed once the angular distance to a wall drops below this.
  double eps_boundary = 1e-8;
  /// Censoring horizon.
  double t_max = 50.0;
  std::uint64_t master_seed = 20261017;
  /// 0 picks DUNKL_THREADS or the hardware concurrency.
  unsigned threads = 0;
  /// Local step factor: du <= step_factor * (angular distance)^2.
  double step_factor = 0.1;
  /// Largest single-step change of the lifted argument before a path is re-run with a finer step.
  double lifting_threshold = std::numbers::pi / 2.0;
  int max_halvings = 12;

  void validate(double wedge_angle) const {
    if (n_paths < 1) throw config_error("McConfig: n_paths must be >= 1");
    if (!(dt0 > 0.0) || !std::isfinite(dt0)) throw config_error("McConfig: dt0 must be > 0");
    if (!(eps_boundary > 0.0)) throw config_error("McConfig: eps_boundary must be > 0");
    if (!(eps_boundary < wedge_angle / 100.0))
      throw config_error("McConfig: eps_boundary must be below 1/100 of the wedge angle");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw config_error("McConfig: t_max must be finite and > 0");
    if (!(step_factor > 0.0 && step_factor <= 1.0)) throw config_error("McConfig: step_factor must lie in (0, 1]");
    if (!(lifting_threshold > 0.0 && lifting_threshold < std::numbers::pi))
      throw config_error("McConfig: lifting_threshold must lie in (0, pi)");
    if (max_halvings < 0) throw config_error("McConfig: max_halvings must be >= 0");
  }
};

/// One simulated first hitting time; censored paths carry t0 = t_max.
struct HittingSample {
  double t0 = 0.0;
  bool censored = false;
  std::size_t path_index = 0;

  bool operator==(const HittingSample&) const = default;
};

/// Lifted argument at the horizon and whether the wedge was left before it.
struct WindingSample {
  double theta_t = 0.0;
  bool exited_before_t = false;
  /// Exit time when exited_before_t, otherwise NaN.
  double t0 = std::numeric_limits<double>::quiet_NaN();
  std::size_t path_index = 0;
  /// Number of step halvings the path needed to satisfy the lifting threshold.
  int halvings = 0;

  bool operator==(const WindingSample& o) const {
    return theta_t == o.theta_t && exited_before_t == o.exited_before_t && path_index == o.path_index &&
           halvings == o.halvings && (t0 == o.t0 || (std::isnan(t0) && std::isnan(o.t0)));
  }
};

}  // namespace dunkl::mcsim

#endif  // DUNKL_MCSIM_CONFIG_HPP
