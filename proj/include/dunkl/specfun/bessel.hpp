#ifndef DUNKL_SPECFUN_BESSEL_HPP
#define DUNKL_SPECFUN_BESSEL_HPP

#include <cmath>
#include <limits>

#include "dunkl/errors.hpp"

namespace dunkl::specfun {

namespace detail {

/// ln sum_{m>=0} q^m / (m! Gamma(m+kappa+1)) with q = u^2/4, summed outward
/// from the largest term so that every partial sum is of positive terms.
inline double log_bessel_core(double kappa, double u) {
  if (u == 0.0) return -std::lgamma(kappa + 1.0);
  const double q = 0.25 * u * u;
  const double mstar = 0.5 * (-(kappa + 2.0) + std::sqrt(kappa * kappa + u * u));
  const int m0 = mstar > 0.0 ? static_cast<int>(std::ceil(mstar)) : 0;
  const double log_peak = m0 * std::log(q) - std::lgamma(m0 + 1.0) - std::lgamma(m0 + kappa + 1.0);
  constexpr double stop = 1e-18;
  double sum = 1.0;
  double t = 1.0;
  for (int m = m0;; ++m) {
    t *= q / ((m + 1.0) * (m + kappa + 1.0));
    sum += t;
    if (t < stop * sum) break;
  }
  t = 1.0;
  for (int m = m0; m > 0; --m) {
    t *= m * (m + kappa) / q;
    sum += t;
    if (t < stop * sum) break;
  }
  return log_peak + std::log(sum);
}

inline void check_bessel_args(double kappa, double u, const char* name) {
  if (!(kappa > -1.0)) throw domain_error(std::string(name) + ": order must be > -1");
  if (!(u >= 0.0)) throw domain_error(std::string(name) + ": argument must be >= 0");
}

inline double checked_exp(double x, const char* name) {
  const double v = std::exp(x);
  if (!std::isfinite(v)) throw overflow_error(std::string(name) + ": value exceeds the double range");
  return v;
}

}  // namespace detail

/// ln I_kappa(u) for u > 0.
inline double log_bessel_i(double kappa, double u) {
  detail::check_bessel_args(kappa, u, "log_bessel_i");
  if (u == 0.0) {
    if (kappa == 0.0) return 0.0;
    if (kappa > 0.0) return -std::numeric_limits<double>::infinity();
    throw overflow_error("log_bessel_i: I_kappa(0) is infinite for kappa < 0");
  }
  return kappa * std::log(0.5 * u) + detail::log_bessel_core(kappa, u);
}

/// Modified Bessel function of the first kind I_kappa(u).
inline double bessel_i(double kappa, double u) {
  detail::check_bessel_args(kappa, u, "bessel_i");
  if (u == 0.0) {
    if (kappa == 0.0) return 1.0;
    if (kappa > 0.0) return 0.0;
    throw overflow_error("bessel_i: I_kappa(0) is infinite for kappa < 0");
  }
  return detail::checked_exp(log_bessel_i(kappa, u), "bessel_i");
}

/// e^{-u} I_kappa(u).
inline double bessel_i_scaled(double kappa, double u) {
  detail::check_bessel_args(kappa, u, "bessel_i_scaled");
  if (u == 0.0) return bessel_i(kappa, 0.0);
  return detail::checked_exp(log_bessel_i(kappa, u) - u, "bessel_i_scaled");
}

/// i_kappa(u) = (2/u)^kappa Gamma(kappa+1) I_kappa(u), equal to 1 at u = 0.
inline double bessel_i_normalized(double kappa, double u) {
  detail::check_bessel_args(kappa, u, "bessel_i_normalized");
  return detail::checked_exp(std::lgamma(kappa + 1.0) + detail::log_bessel_core(kappa, u),
                             "bessel_i_normalized");
}

/// e^{-u} i_kappa(u).
inline double bessel_i_normalized_scaled(double kappa, double u) {
  detail::check_bessel_args(kappa, u, "bessel_i_normalized_scaled");
  return std::exp(std::lgamma(kappa + 1.0) + detail::log_bessel_core(kappa, u) - u);
}

}  // namespace dunkl::specfun

#endif  // DUNKL_SPECFUN_BESSEL_HPP
