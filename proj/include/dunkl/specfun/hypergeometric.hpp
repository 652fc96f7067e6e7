#ifndef DUNKL_SPECFUN_HYPERGEOMETRIC_HPP
#define DUNKL_SPECFUN_HYPERGEOMETRIC_HPP

#include <cmath>
#include <limits>

#include "dunkl/errors.hpp"
#include "dunkl/model.hpp"
#include "dunkl/specfun/gamma.hpp"
#include "dunkl/specfun/quadrature.hpp"

namespace dunkl::specfun {

/// value = mantissa * exp(log_scale); lets series exceed the double range.
struct ScaledValue {
  double mantissa = 0.0;
  double log_scale = 0.0;

  double value() const { return mantissa * std::exp(log_scale); }
  double log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }
};

namespace detail {

inline bool non_positive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

/// sum_{m>=0} t_m with t_0 = 1 and t_{m+1} = t_m * ratio(m). Stops once the
/// terms are decreasing and `consec_small` successive |t_m| <= rel_tol |sum|.
template <typename Ratio>
ScaledValue sum_ratio_series(Ratio&& ratio, const SeriesControl& ctrl, int cap, const char* name) {
  constexpr double big = 1e250;
  const double log_big = std::log(big);
  double term = 1.0;
  double sum = 1.0;
  double log_scale = 0.0;
  int small = 0;
  for (int m = 0;; ++m) {
    if (m >= cap)
      throw nonconvergence_error(std::string(name) + ": term cap reached", sum * std::exp(log_scale), m);
    const double r = ratio(m);
    term *= r;
    if (term == 0.0) break;
    sum += term;
    if (std::abs(sum) > big || std::abs(term) > big) {
      sum /= big;
      term /= big;
      log_scale += log_big;
    }
    const bool decreasing = std::abs(ratio(m + 1)) < 1.0;
    if (decreasing && std::abs(term) <= ctrl.rel_tol * std::abs(sum)) {
      if (++small >= ctrl.consec_small) break;
    } else {
      small = 0;
    }
  }
  return {sum, log_scale};
}

inline int hyp_cap(const SeriesControl& ctrl, double z) {
  return ctrl.max_terms + 2 * static_cast<int>(std::ceil(std::abs(z)));
}

}  // namespace detail

/// Plain power series of 1F1(a; b; z), no transformation applied.
inline ScaledValue hyp_1f1_series(double a, double b, double z, const SeriesControl& ctrl) {
  if (detail::non_positive_integer(b)) throw domain_error("hyp_1f1: b is a non-positive integer");
  if (z == 0.0) return {1.0, 0.0};
  return detail::sum_ratio_series(
      [=](int m) { return (a + m) * z / ((b + m) * (m + 1.0)); }, ctrl, detail::hyp_cap(ctrl, z),
      "hyp_1f1");
}

/// 1F1(a; b; z) in scaled form; negative z goes through Kummer's first
/// relation e^{-z} 1F1(a;b;z) = 1F1(b-a;b;-z) so the summed series has no
/// alternating cancellation when b > a.
inline ScaledValue hyp_1f1_scaled(double a, double b, double z, const SeriesControl& ctrl) {
  if (z >= 0.0) return hyp_1f1_series(a, b, z, ctrl);
  ScaledValue s = hyp_1f1_series(b - a, b, -z, ctrl);
  s.log_scale += z;
  return s;
}

inline double hyp_1f1(double a, double b, double z, const SeriesControl& ctrl = {}) {
  const ScaledValue s = hyp_1f1_scaled(a, b, z, ctrl);
  const double v = s.value();
  if (!std::isfinite(v)) throw overflow_error("hyp_1f1: result exceeds the double range");
  return v;
}

/// ln 1F1(a; b; z) for arguments where the function is positive.
inline double log_hyp_1f1(double a, double b, double z, const SeriesControl& ctrl = {}) {
  const ScaledValue s = hyp_1f1_scaled(a, b, z, ctrl);
  if (!(s.mantissa > 0.0)) throw domain_error("log_hyp_1f1: value is not positive");
  return s.log_abs();
}

/// 1F1 through its Euler integral; b > a > 0.
inline double hyp_1f1_euler(double a, double b, double z, const SeriesControl& ctrl = {}) {
  if (!(a > 0.0) || !(b > a)) throw domain_error("hyp_1f1_euler: requires b > a > 0");
  // Factor out e^{max(z,0)} so the integrand stays bounded by one.
  const double shift = std::max(z, 0.0);
  const auto res = integrate_doubling(
      [=](int n) {
        return [=](auto&& f) { return integrate_jacobi_interval(0.0, 1.0, b - a - 1.0, a - 1.0, n, f); };
      },
      [=](double u) { return std::exp(z * u - shift); }, ctrl, 1e-12);
  const double log_pref = std::lgamma(b) - std::lgamma(a) - std::lgamma(b - a);
  return std::exp(log_pref + shift) * res.value;
}

/// Gauss series 2F1(c, d; e; u) for |u| < 1.
inline double hyp_2f1(double c, double d, double e, double u, const SeriesControl& ctrl = {}) {
  if (!(std::abs(u) < 1.0)) throw domain_error("hyp_2f1: requires |u| < 1");
  if (detail::non_positive_integer(e)) throw domain_error("hyp_2f1: e is a non-positive integer");
  if (u == 0.0) return 1.0;
  const ScaledValue s = detail::sum_ratio_series(
      [=](int m) { return (c + m) * (d + m) * u / ((e + m) * (m + 1.0)); }, ctrl, ctrl.max_terms,
      "hyp_2f1");
  return s.value();
}

/// Euler integral representation of 2F1; e > d > 0, |u| < 1.
inline double hyp_2f1_euler(double c, double d, double e, double u, const SeriesControl& ctrl = {}) {
  if (!(d > 0.0) || !(e > d)) throw domain_error("hyp_2f1_euler: requires e > d > 0");
  if (!(std::abs(u) < 1.0)) throw domain_error("hyp_2f1_euler: requires |u| < 1");
  const auto res = integrate_doubling(
      [=](int n) {
        return [=](auto&& f) { return integrate_jacobi_interval(0.0, 1.0, e - d - 1.0, d - 1.0, n, f); };
      },
      [=](double z) { return std::pow(1.0 - u * z, -c); }, ctrl, 1e-12);
  const double log_pref = std::lgamma(e) - std::lgamma(d) - std::lgamma(e - d);
  return std::exp(log_pref) * res.value;
}

}  // namespace dunkl::specfun

#endif  // DUNKL_SPECFUN_HYPERGEOMETRIC_HPP
