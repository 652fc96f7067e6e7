#ifndef DUNKL_SPECFUN_IDENTITIES_HPP
#define DUNKL_SPECFUN_IDENTITIES_HPP

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dunkl/errors.hpp"
#include "dunkl/model.hpp"
#include "dunkl/specfun/bessel.hpp"
#include "dunkl/specfun/hypergeometric.hpp"
#include "dunkl/specfun/orthopoly.hpp"
#include "dunkl/specfun/quadrature.hpp"

// Residuals of classical special-function identities. Each returns a
// relative residual |lhs - rhs| / scale, so 0 means exact agreement.

namespace dunkl::specfun {

namespace detail {

inline double rel_residual(double lhs, double rhs, double scale) {
  const double s = std::max(std::abs(scale), std::numeric_limits<double>::min());
  return std::abs(lhs - rhs) / s;
}

}  // namespace detail

/// Legendre duplication sqrt(pi) Gamma(2x+1) = 2^{2x} Gamma(x+1/2) Gamma(x+1),
/// compared in log space. (Equivalently sqrt(pi) Gamma(2x) = 2^{2x-1} Gamma(x) Gamma(x+1/2).)
inline double legendre_duplication_residual(double x) {
  if (!(x > 0.0)) throw domain_error("legendre_duplication_residual: x must be > 0");
  const double lhs = 0.5 * std::log(std::numbers::pi) + std::lgamma(2.0 * x + 1.0);
  const double rhs = 2.0 * x * std::log(2.0) + std::lgamma(x + 0.5) + std::lgamma(x + 1.0);
  return std::abs(std::expm1(lhs - rhs));
}

namespace detail {

/// Plain 1F1 power series in long double; the alternating side of the Kummer
/// relation loses about e^{|z|} ulps to cancellation.
inline long double hyp_1f1_plain(double a, double b, double z, int max_terms) {
  long double term = 1.0L, sum = 1.0L;
  for (int m = 0; m < max_terms; ++m) {
    term *= (static_cast<long double>(a) + m) * z / ((static_cast<long double>(b) + m) * (m + 1));
    sum += term;
    if (m > std::abs(z) && std::abs(term) <= 1e-21L * std::abs(sum)) return sum;
  }
  throw nonconvergence_error("kummer1_residual: series did not converge", static_cast<double>(sum), max_terms);
}

}  // namespace detail

/// e^{-z} 1F1(a;b;z) = 1F1(b-a;b;-z), both sides by the plain series.
inline double kummer1_residual(double a, double b, double z, const SeriesControl& ctrl = {}) {
  const int cap = ctrl.max_terms + 4 * static_cast<int>(std::abs(z));
  const long double lhs = detail::hyp_1f1_plain(a, b, z, cap) * std::exp(-static_cast<long double>(z));
  const long double rhs = detail::hyp_1f1_plain(b - a, b, -z, cap);
  return detail::rel_residual(static_cast<double>(lhs), static_cast<double>(rhs), static_cast<double>(lhs));
}

/// 1F1(a; 2a+1; x) against its half-odd Bessel form, x < 0.
inline double kummer2_residual(double a, double x, const SeriesControl& ctrl = {}) {
  if (!(x < 0.0)) throw domain_error("kummer2_residual: x must be < 0");
  if (!(a > 0.0)) throw domain_error("kummer2_residual: a must be > 0");
  const double w = -0.5 * x;
  const double lhs = hyp_1f1(a, 2.0 * a + 1.0, x, ctrl);
  // e^{x/2} I(-x/2) = e^{-w} I(w).
  const double log_pref = (2.0 * a - 1.0) * std::log(2.0) + std::lgamma(a + 0.5) + (0.5 - a) * std::log(-x);
  const double rhs = std::exp(log_pref) * (bessel_i_scaled(a - 0.5, w) + bessel_i_scaled(a + 0.5, w));
  return detail::rel_residual(lhs, rhs, lhs);
}

/// 2F1(a, b; 2a; u) = (1-u/2)^{-b} 2F1(b/2, (b+1)/2; a+1/2; u^2/(2-u)^2).
inline double quadratic_transform_residual(double a, double b, double u, const SeriesControl& ctrl = {}) {
  const double lhs = hyp_2f1(a, b, 2.0 * a, u, ctrl);
  const double w = u * u / ((2.0 - u) * (2.0 - u));
  const double rhs = std::pow(1.0 - 0.5 * u, -b) * hyp_2f1(0.5 * b, 0.5 * (b + 1.0), a + 0.5, w, ctrl);
  return detail::rel_residual(lhs, rhs, lhs);
}

/// i_{kappa-1/2}(u) = int e^{zu} mu^kappa(dz), kappa > 0.
inline double poisson_residual(double kappa, double u, const SeriesControl& ctrl = {}) {
  const double lhs = bessel_i_normalized(kappa - 0.5, u);
  const double rhs = integrate_beta(kappa, [u](double z) { return std::exp(z * u); }, ctrl, 1e-12).value;
  return detail::rel_residual(lhs, rhs, lhs);
}

/// Endpoint values P_j(1) = (a+1)_j/j! and P_j(-1) = (-1)^j (b+1)_j/j!;
/// returns the larger of the two residuals.
inline double special_values_residual(int j, double a, double b) {
  double up = 1.0;
  double down = 1.0;
  for (int i = 0; i < j; ++i) {
    up *= (a + 1.0 + i) / (i + 1.0);
    down *= (b + 1.0 + i) / (i + 1.0);
  }
  if (j % 2 == 1) down = -down;
  const double r1 = detail::rel_residual(jacobi_p(j, a, b, 1.0), up, up);
  const double r2 = detail::rel_residual(jacobi_p(j, a, b, -1.0), down, down);
  return std::max(r1, r2);
}

/// d/du P_{j+1}^{(a-1,b-1)}(u) = ((j+a+b)/2) P_j^{(a,b)}(u) by a central difference.
inline double differentiation_residual(int j, double a, double b, double u, double h = 1e-5) {
  if (!(a > 0.0 && b > 0.0)) throw domain_error("differentiation_residual: a, b must be > 0");
  const double fd = (detail::jacobi_recurrence(j + 1, a - 1.0, b - 1.0, u + h) -
                     detail::jacobi_recurrence(j + 1, a - 1.0, b - 1.0, u - h)) /
                    (2.0 * h);
  const double exact = 0.5 * (j + a + b) * jacobi_p(j, a, b, u);
  return std::abs(fd - exact) / std::max(1.0, std::abs(exact));
}

/// max_{i,m <= n} |int p_i p_m w - delta_im| under a Gauss-Jacobi rule exact
/// for the products.
inline double orthonormality_residual(int n, double a, double b) {
  const auto rule = gauss_jacobi(a, b, n + 2);
  double worst = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int m = 0; m <= i; ++m) {
      double acc = 0.0;
      for (std::size_t q = 0; q < rule->size(); ++q)
        acc += rule->weights[q] * jacobi_orthonormal(i, a, b, rule->nodes[q]) *
               jacobi_orthonormal(m, a, b, rule->nodes[q]);
      worst = std::max(worst, std::abs(acc - (i == m ? 1.0 : 0.0)));
    }
  return worst;
}

/// C_j^{(k)}(2x^2-1) = int C_{2j}^{(2k)}(ux) mu^k(du); the residual is taken
/// relative to int |C_{2j}^{(2k)}(ux)| mu^k(du).
inline double xu_identity_check(int j, double k, double x, const SeriesControl& ctrl = {}) {
  if (j < 0) throw domain_error("xu_identity_check: j must be >= 0");
  if (!(k > 0.0)) throw domain_error("xu_identity_check: k must be > 0");
  if (!(std::abs(x) <= 1.0)) throw domain_error("xu_identity_check: x must lie in [-1, 1]");
  const QuadratureRule rule = gauss_jacobi_rule(k, std::max(ctrl.quad_nodes, j + 2));
  double rhs = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double c = gegenbauer_c(2 * j, 2.0 * k, rule.nodes[i] * x);
    rhs += rule.weights[i] * c;
    scale += rule.weights[i] * std::abs(c);
  }
  const double lhs = gegenbauer_c(j, k, 2.0 * x * x - 1.0);
  return detail::rel_residual(lhs, rhs, std::max(scale, std::abs(lhs)));
}

/// Erdelyi's multiplication theorem
///   1F1(a,c;yz) = sum_j (-z)^j Gamma(b+j)(a)_j / (Gamma(b+2j) j!)
///                 2F1(-j, j+b; c; y) 1F1(a+j, b+1+2j; z),
/// with the terminating 2F1 evaluated as j!/(c)_j P_j^{(c-1, b-c)}(1-2y).
inline double erdelyi_multiplication_check(double a, double b, double c, double y, double z,
                                           const SeriesControl& ctrl = {}) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0 && z >= 0.0))
    throw domain_error("erdelyi_multiplication_check: requires a, b, c > 0 and z >= 0");
  if (!(std::abs(y) < 1.0)) throw domain_error("erdelyi_multiplication_check: requires |y| < 1");
  const double lhs = hyp_1f1(a, c, y * z, ctrl);
  if (z == 0.0) return detail::rel_residual(lhs, 1.0, lhs);

  double sum = 0.0;
  int small = 0;
  for (int j = 0;; ++j) {
    if (j >= ctrl.max_terms)
      throw nonconvergence_error("erdelyi_multiplication_check: term cap reached", sum, j);
    // ln |(-z)^j Gamma(b+j) (a)_j j! / (Gamma(b+2j) j! (c)_j)|
    const double log_mag = j * std::log(z) + std::lgamma(b + j) - std::lgamma(b + 2.0 * j) +
                           std::lgamma(a + j) - std::lgamma(a) - std::lgamma(c + j) + std::lgamma(c);
    const double poly = detail::jacobi_recurrence(j, c - 1.0, b - c, 1.0 - 2.0 * y);
    const ScaledValue f = hyp_1f1_scaled(a + j, b + 1.0 + 2.0 * j, z, ctrl);
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    const double term = sign * poly * f.mantissa * std::exp(log_mag + f.log_scale);
    sum += term;
    if (std::abs(term) <= ctrl.rel_tol * 1e-2 * std::abs(sum) || term == 0.0) {
      if (++small >= ctrl.consec_small) break;
    } else {
      small = 0;
    }
  }
  return detail::rel_residual(lhs, sum, std::max(std::abs(lhs), std::numeric_limits<double>::min()));
}

}  // namespace dunkl::specfun

#endif  // DUNKL_SPECFUN_IDENTITIES_HPP
