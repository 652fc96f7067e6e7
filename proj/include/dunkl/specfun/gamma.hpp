#ifndef DUNKL_SPECFUN_GAMMA_HPP
#define DUNKL_SPECFUN_GAMMA_HPP

#include <cmath>
#include <limits>

#include "dunkl/errors.hpp"

namespace dunkl::specfun {

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0)) throw domain_error("log_gamma: x must be > 0");
  return std::lgamma(x);
}

/// Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.
///
/// The plain product already gives (0)_k = delta_{k0} and, for a = -n,
/// zero when k > n and (-1)^k n!/(n-k)! otherwise.
template <typename Real>
Real pochhammer(Real a, int k) {
  Real r = 1;
  for (int i = 0; i < k; ++i) r *= a + i;
  return r;
}

/// ln (a)_k for a > 0.
inline double log_pochhammer(double a, int k) {
  if (k == 0) return 0.0;
  return std::lgamma(a + k) - std::lgamma(a);
}

/// (a)_k / k! for a >= 0, computed without overflow for large k.
inline double pochhammer_over_factorial(double a, int k) {
  if (k == 0) return 1.0;
  if (a == 0.0) return 0.0;
  return std::exp(std::lgamma(a + k) - std::lgamma(a) - std::lgamma(k + 1.0));
}

/// Lower incomplete gamma integral  int_0^x e^{-u} u^{a-1} du,  a > 0, x >= 0.
inline double lower_incomplete_gamma(double a, double x) {
  if (!(a > 0.0)) throw domain_error("lower_incomplete_gamma: a must be > 0");
  if (x < 0.0) throw domain_error("lower_incomplete_gamma: x must be >= 0");
  if (x == 0.0) return 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double log_prefix = a * std::log(x) - x;
  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
      term *= x / (a + n);
      sum += term;
      if (std::abs(term) < std::abs(sum) * eps) break;
    }
    return std::exp(log_prefix) * sum;
  }
  // Upper integral by the Lentz continued fraction, then complement.
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  const double upper = std::exp(log_prefix) * h;
  return std::tgamma(a) - upper;
}

}  // namespace dunkl::specfun

#endif  // DUNKL_SPECFUN_GAMMA_HPP
