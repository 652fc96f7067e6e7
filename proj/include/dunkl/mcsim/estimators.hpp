#ifndef DUNKL_MCSIM_ESTIMATORS_HPP
#define DUNKL_MCSIM_ESTIMATORS_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "dunkl/errors.hpp"
#include "dunkl/mcsim/config.hpp"
#include "dunkl/model.hpp"
#include "dunkl/planarbm.hpp"

namespace dunkl::mcsim {

/// Sample mean with its standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Mean and SE of f over the samples.
template <typename S, typename F>
Estimate sample_mean(const std::vector<S>& samples, F&& f) {
  if (samples.empty()) throw domain_error("sample_mean: no samples");
  const double n = static_cast<double>(samples.size());
  double sum = 0.0, sum2 = 0.0;
  for (const auto& s : samples) {
    const double v = f(s);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double var = samples.size() > 1 ? std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0)) : 0.0;
  return {mean, std::sqrt(var / n)};
}

/// Empirical P(T0 > t) on a grid with binomial standard errors sqrt(q(1-q)/N).
inline Curve estimate_tail(const std::vector<HittingSample>& samples, const std::vector<double>& times,
                           double t_max) {
  if (samples.empty()) throw domain_error("estimate_tail: no samples");
  for (double t : times)
    if (!(t < t_max)) throw domain_error("estimate_tail: grid point at or beyond the censoring horizon");
  std::vector<double> t0;
  t0.reserve(samples.size());
  for (const auto& s : samples) t0.push_back(s.censored ? std::numeric_limits<double>::infinity() : s.t0);
  std::sort(t0.begin(), t0.end());
  const double n = static_cast<double>(t0.size());
  Curve c;
  c.std_errors.emplace();
  for (double t : times) {
    const auto alive = t0.end() - std::upper_bound(t0.begin(), t0.end(), t);
    const double q = alive / n;
    c.abscissae.push_back(t);
    c.values.push_back(q);
    c.std_errors->push_back(std::sqrt(q * (1.0 - q) / n));
  }
  return c;
}

/// Fraction of paths still inside the wedge at the horizon.
inline Estimate estimate_exit_tail(const std::vector<WindingSample>& samples) {
  return sample_mean(samples, [](const WindingSample& s) { return s.exited_before_t ? 0.0 : 1.0; });
}

/// E[W_p(Theta_t)] over all paths.
inline Estimate estimate_wp_mean(const std::vector<WindingSample>& samples, int p) {
  return sample_mean(samples, [p](const WindingSample& s) { return planarbm::square_wave(p, s.theta_t); });
}

/// E[W_p(Theta_t) 1{T0 < t}].
inline Estimate estimate_wp_indicator(const std::vector<WindingSample>& samples, int p) {
  return sample_mean(samples, [p](const WindingSample& s) {
    return s.exited_before_t ? static_cast<double>(planarbm::square_wave(p, s.theta_t)) : 0.0;
  });
}

/// E[cos(lambda (Theta_t - phi))], the winding characteristic function.
inline Estimate estimate_winding_cf(const std::vector<WindingSample>& samples, double lambda, double phi) {
  return sample_mean(samples, [&](const WindingSample& s) { return std::cos(lambda * (s.theta_t - phi)); });
}

/// E[sin(lambda (Theta_t - phi))], zero by symmetry of the winding.
inline Estimate estimate_winding_sine(const std::vector<WindingSample>& samples, double lambda, double phi) {
  return sample_mean(samples, [&](const WindingSample& s) { return std::sin(lambda * (s.theta_t - phi)); });
}

}  // namespace dunkl::mcsim

#endif  // DUNKL_MCSIM_ESTIMATORS_HPP
