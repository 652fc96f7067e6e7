#ifndef DUNKL_SPECFUN_ORTHOPOLY_HPP
#define DUNKL_SPECFUN_ORTHOPOLY_HPP

#include <cmath>
#include <string>

#include "dunkl/errors.hpp"

namespace dunkl::specfun {

/// How the Jacobi norm enters p_j = P_j / N_j.
enum class NormReading {
  orthonormal,  ///< N_j = sqrt of the squared norm: true orthonormal polynomials
  literal,      ///< N_j = the squared norm itself
};

namespace detail {

/// Three-term recurrence for P_j^{(a,b)}(x); valid for any real x.
inline double jacobi_recurrence(int j, double a, double b, double x) {
  if (j == 0) return 1.0;
  double p0 = 1.0;
  double p1 = 0.5 * (a - b + (a + b + 2.0) * x);
  for (int k = 2; k <= j; ++k) {
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    const double p2 = (c2 * p1 - c3 * p0) / c1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

inline void check_jacobi_args(int j, double a, double b, const char* name) {
  if (j < 0) throw domain_error(std::string(name) + ": degree must be >= 0");
  if (!(a > -1.0 && b > -1.0)) throw domain_error(std::string(name) + ": a, b must be > -1");
}

}  // namespace detail

/// Jacobi polynomial P_j^{(a,b)}(x), standard normalization P_j(1) = (a+1)_j / j!.
inline double jacobi_p(int j, double a, double b, double x) {
  detail::check_jacobi_args(j, a, b, "jacobi_p");
  if (!(std::abs(x) <= 1.0)) throw domain_error("jacobi_p: x must lie in [-1, 1]");
  return detail::jacobi_recurrence(j, a, b, x);
}

/// int_{-1}^{1} P_j^2 (1-u)^a (1+u)^b du.
inline double jacobi_sq_norm(int j, double a, double b) {
  detail::check_jacobi_args(j, a, b, "jacobi_sq_norm");
  const double ab = a + b;
  if (j == 0)
    return std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(ab + 2.0));
  return std::exp((ab + 1.0) * std::log(2.0) - std::log(2.0 * j + ab + 1.0) + std::lgamma(j + a + 1.0) +
                  std::lgamma(j + b + 1.0) - std::lgamma(j + ab + 1.0) - std::lgamma(j + 1.0));
}

inline double jacobi_norm_divisor(int j, double a, double b, NormReading reading = NormReading::orthonormal) {
  const double sn = jacobi_sq_norm(j, a, b);
  return reading == NormReading::orthonormal ? std::sqrt(sn) : sn;
}

/// p_j^{(a,b)}(x) = P_j^{(a,b)}(x) / N_j.
inline double jacobi_orthonormal(int j, double a, double b, double x,
                                 NormReading reading = NormReading::orthonormal) {
  return jacobi_p(j, a, b, x) / jacobi_norm_divisor(j, a, b, reading);
}

/// int_{-1}^{1} P_j^{(a,b)}(u) du in closed form, through the derivative
/// rule and the endpoint values of P_{j+1}^{(a-1,b-1)}.
inline double jacobi_integral(int j, double a, double b) {
  detail::check_jacobi_args(j, a, b, "jacobi_integral");
  if (j == 0) return 2.0;
  double up = 1.0;
  double down = 1.0;
  for (int i = 0; i <= j; ++i) {
    up *= (a + i) / (i + 1.0);
    down *= (b + i) / (i + 1.0);
  }
  const double sign = j % 2 == 0 ? 1.0 : -1.0;
  return 2.0 / (j + a + b) * (up + sign * down);
}

/// Gegenbauer polynomial C_j^{(nu)}(x), nu > -1/2.
inline double gegenbauer_c(int j, double nu, double x) {
  if (j < 0) throw domain_error("gegenbauer_c: degree must be >= 0");
  if (!(nu > -0.5)) throw domain_error("gegenbauer_c: nu must be > -1/2");
  if (j == 0) return 1.0;
  double c0 = 1.0;
  double c1 = 2.0 * nu * x;
  for (int n = 1; n < j; ++n) {
    const double c2 = (2.0 * x * (n + nu) * c1 - (n + 2.0 * nu - 1.0) * c0) / (n + 1.0);
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

/// Chebyshev polynomial of the second kind U_j(x).
inline double chebyshev_u(int j, double x) {
  if (j < 0) throw domain_error("chebyshev_u: degree must be >= 0");
  if (j == 0) return 1.0;
  double u0 = 1.0;
  double u1 = 2.0 * x;
  for (int n = 1; n < j; ++n) {
    const double u2 = 2.0 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

}  // namespace dunkl::specfun

#endif  // DUNKL_SPECFUN_ORTHOPOLY_HPP
