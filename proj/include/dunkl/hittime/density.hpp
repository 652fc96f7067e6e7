#ifndef DUNKL_HITTIME_DENSITY_HPP
#define DUNKL_HITTIME_DENSITY_HPP

#include <cmath>
#include <numbers>

#include "dunkl/errors.hpp"
#include "dunkl/hittime/series.hpp"
#include "dunkl/model.hpp"
#include "dunkl/specfun/bessel.hpp"
#include "dunkl/specfun/gamma.hpp"
#include "dunkl/specfun/hypergeometric.hpp"
#include "dunkl/specfun/orthopoly.hpp"
#include "dunkl/specfun/quadrature.hpp"

// Unnormalized densities of V0 = rho^2/(2 T0) for equal multiplicities
// k0 = k1 = k = nu + 1/2. Each route is a different closed form of the same
// law, so any two of them differ by a factor depending on (p, nu) only.

namespace dunkl::hittime {

namespace detail {

inline void check_equal_k(double k, const char* name) {
  if (!(k > 0.5 && k <= 1.0)) throw domain_error(std::string(name) + ": k must lie in (1/2, 1]");
}

inline void check_phi(double phi, double wedge, const char* name) {
  if (!(phi > 0.0 && phi < wedge)) throw domain_error(std::string(name) + ": phi outside the open wedge");
}

inline double gegenbauer_at_one(int j, double k) {
  double r = 1.0;
  for (int i = 0; i < j; ++i) r *= (2.0 * k + i) / (i + 1.0);
  return r;
}

}  // namespace detail

/// Even part in j of
///   sin^{2nu}(2p phi) e^{-v} sum_j Gamma(a_j)/Gamma(b_j) v^{p(j+2nu)-1}
///   1F1(a_j, b_j+1, v) C_j^{(k)}(cos 2p phi),   a_j = p(j+1), b_j = 2p(j+k).
inline double density_series_equal_k(double v, int p, double k, double phi, const SeriesControl& ctrl = {}) {
  detail::check_equal_k(k, "density_series_equal_k");
  if (p < 1) throw domain_error("density_series_equal_k: p must be >= 1");
  detail::check_phi(phi, std::numbers::pi / (2.0 * p), "density_series_equal_k");
  if (!(v > 0.0)) throw domain_error("density_series_equal_k: v must be > 0");
  const double nu = k - 0.5;
  const double x = std::cos(2.0 * p * phi);
  const double logv = std::log(v);
  auto term = [&](int i) -> SeriesTerm {
    const int j = 2 * i;
    const double aj = p * (j + 1.0), bj = 2.0 * p * (j + k);
    const auto f = specfun::hyp_1f1_scaled(aj, bj + 1.0, v, ctrl);
    const double mag = std::exp(std::lgamma(aj) - std::lgamma(bj) + (p * (j + 2.0 * nu) - 1.0) * logv +
                                std::log(f.mantissa) + f.log_scale - v);
    return {mag * specfun::gegenbauer_c(j, k, x), mag * detail::gegenbauer_at_one(j, k)};
  };
  return std::pow(std::sin(2.0 * p * phi), 2.0 * nu) * sum_polynomial_series(term, ctrl, "density_series_equal_k");
}

/// sum_j Gamma(2(j+1))/Gamma(4(j+k)) v^{2j} 1F1(2(j+1), 4(j+k)+1, v) C_j^{(k)}(cos 4 phi).
inline double lemma1_lhs(double v, double k, double phi, const SeriesControl& ctrl = {}) {
  if (!(k > 0.0)) throw domain_error("lemma1_lhs: k must be > 0");
  if (!(v >= 0.0)) throw domain_error("lemma1_lhs: v must be >= 0");
  const double x = std::cos(4.0 * phi);
  if (v == 0.0) return std::exp(-std::lgamma(4.0 * k));
  const double logv = std::log(v);
  auto term = [&](int j) -> SeriesTerm {
    const auto f = specfun::hyp_1f1_scaled(2.0 * (j + 1), 4.0 * (j + k) + 1.0, v, ctrl);
    const double mag = std::exp(std::lgamma(2.0 * (j + 1)) - std::lgamma(4.0 * (j + k)) + 2.0 * j * logv +
                                std::log(f.mantissa) + f.log_scale);
    return {mag * specfun::gegenbauer_c(j, k, x), mag * detail::gegenbauer_at_one(j, k)};
  };
  return sum_polynomial_series(term, ctrl, "lemma1_lhs");
}

/// (1/Gamma(4k)) int 1F1(2, 2k+1/2; v(1 - u cos 2phi)/2) mu^k(du).
inline double lemma1_rhs(double v, double k, double phi, const SeriesControl& ctrl = {}) {
  if (!(k > 0.0)) throw domain_error("lemma1_rhs: k must be > 0");
  if (!(v >= 0.0)) throw domain_error("lemma1_rhs: v must be >= 0");
  const double c = std::cos(2.0 * phi);
  const auto res = specfun::integrate_beta(
      k, [&](double u) { return specfun::hyp_1f1(2.0, 2.0 * k + 0.5, 0.5 * v * (1.0 - u * c), ctrl); }, ctrl,
      1e-12);
  return std::exp(-std::lgamma(4.0 * k)) * res.value;
}

namespace detail {

/// Integrands carry exponents of size v, so node-to-node rounding grows with
/// v; successive Gauss levels stop agreeing beyond about 1e-11 at v ~ 1e3.
inline constexpr double route_rel_tol = 1e-10;

/// e^{-v} int [1F1(2, 2nu+3/2; v(1-u cos2phi)/2) + 1F1(.., v(1-u sin2phi)/2)] mu^{nu+1/2}(du)
inline double integral_route_smooth(double v, double nu, double phi, const SeriesControl& ctrl) {
  const double c = std::cos(2.0 * phi), s = std::sin(2.0 * phi);
  const double b = 2.0 * nu + 1.5;
  auto f = [&](double u) {
    const auto f1 = specfun::hyp_1f1_scaled(2.0, b, 0.5 * v * (1.0 - u * c), ctrl);
    const auto f2 = specfun::hyp_1f1_scaled(2.0, b, 0.5 * v * (1.0 - u * s), ctrl);
    return f1.mantissa * std::exp(f1.log_scale - v) + f2.mantissa * std::exp(f2.log_scale - v);
  };
  return specfun::integrate_beta(nu + 0.5, f, ctrl, route_rel_tol).value;
}

inline void check_nu(double nu, double lo, double hi, const char* name) {
  if (!(nu > lo && nu <= hi)) throw domain_error(std::string(name) + ": nu outside its admissible range");
}

}  // namespace detail

/// Integral form for the pi/4 wedge (p = 2):
///   sin^{2nu}(4phi) e^{-v} v^{4nu-1} int [1F1(2, 2nu+3/2; v(1-u cos2phi)/2)
///                                       + 1F1(2, 2nu+3/2; v(1-u sin2phi)/2)] mu^{nu+1/2}(du).
inline double density_v0_integral(double v, double nu, double phi, const SeriesControl& ctrl = {}) {
  detail::check_nu(nu, 0.0, 0.5, "density_v0_integral");
  detail::check_phi(phi, std::numbers::pi / 4.0, "density_v0_integral");
  if (!(v > 0.0)) throw domain_error("density_v0_integral: v must be > 0");
  return std::pow(std::sin(4.0 * phi), 2.0 * nu) * std::pow(v, 4.0 * nu - 1.0) *
         detail::integral_route_smooth(v, nu, phi, ctrl);
}

namespace detail {

/// v^{-(4nu-1)} times the Bessel-convolution form, after y = v s.
inline double bessel_route_smooth(double v, double nu, double phi, const SeriesControl& ctrl) {
  const double c = std::cos(2.0 * phi), s2 = std::sin(2.0 * phi);
  const double beta = 2.0 * nu - 1.5;
  auto g = [&](double s) {
    const double w = 0.5 * v * (1.0 - s);
    // e^{-v/2} e^{-vs/2} i_nu(c w) = exp(-v/2 - vs/2 + c w) e^{-c w} i_nu(c w)
    const double e1 = std::exp(-0.5 * v - 0.5 * v * s + c * w) * specfun::bessel_i_normalized_scaled(nu, c * w);
    const double e2 = std::exp(-0.5 * v - 0.5 * v * s + s2 * w) * specfun::bessel_i_normalized_scaled(nu, s2 * w);
    return e1 + e2;
  };
  // int_0^1 s^beta (1-s) g(s) ds
  const auto res = specfun::integrate_doubling(
      [&](int n) {
        return [&, n](auto&& f) { return specfun::integrate_jacobi_interval(0.0, 1.0, 1.0, beta, n, f); };
      },
      g, ctrl, route_rel_tol);
  return res.value;
}

}  // namespace detail

/// Bessel-convolution form, nu in (1/4, 1/2]:
///   sin^{2nu}(4phi) e^{-v/2} v^{2nu-3/2} int_0^v e^{-y/2} y^{2nu-3/2} (v-y)
///   [i_nu(cos2phi (v-y)/2) + i_nu(sin2phi (v-y)/2)] dy.
inline double density_v0_bessel(double v, double nu, double phi, const SeriesControl& ctrl = {}) {
  detail::check_nu(nu, 0.25, 0.5, "density_v0_bessel");
  detail::check_phi(phi, std::numbers::pi / 4.0, "density_v0_bessel");
  if (!(v > 0.0)) throw domain_error("density_v0_bessel: v must be > 0");
  // v^{2nu-3/2} from the prefactor and v^{2nu-3/2+2} from y = v s.
  return std::pow(std::sin(4.0 * phi), 2.0 * nu) * std::pow(v, 4.0 * nu - 1.0) *
         detail::bessel_route_smooth(v, nu, phi, ctrl);
}

/// Quarter plane (p = 1): V0 is the larger of two independent Gamma(nu)
/// variables scaled by 1/sin^2 phi and 1/cos^2 phi. Unnormalized density
///   sin^{2nu}phi v^{nu-1} e^{-v sin^2 phi} gamma(nu, v cos^2 phi) + (sin <-> cos).
inline double density_v0_z2z2(double v, double nu, double phi) {
  detail::check_nu(nu, 0.0, 0.5, "density_v0_z2z2");
  detail::check_phi(phi, std::numbers::pi / 2.0, "density_v0_z2z2");
  if (!(v > 0.0)) throw domain_error("density_v0_z2z2: v must be > 0");
  const double s2 = std::sin(phi) * std::sin(phi), c2 = std::cos(phi) * std::cos(phi);
  const double lead = std::pow(v, nu - 1.0);
  return std::pow(s2, nu) * lead * std::exp(-v * s2) * specfun::lower_incomplete_gamma(nu, v * c2) +
         std::pow(c2, nu) * lead * std::exp(-v * c2) * specfun::lower_incomplete_gamma(nu, v * s2);
}

/// P(T0 > t) in the quarter plane: P(nu, v sin^2 phi) P(nu, v cos^2 phi), v = rho^2/(2t).
inline double tail_z2z2(double t, double nu, const StartPoint& start) {
  detail::check_nu(nu, 0.0, 0.5, "tail_z2z2");
  detail::check_phi(start.phi, std::numbers::pi / 2.0, "tail_z2z2");
  if (!(t > 0.0) || !(start.rho > 0.0)) throw domain_error("tail_z2z2: t and rho must be > 0");
  const double v = v_from_t(start.rho, t);
  const double g = std::tgamma(nu);
  const double s = std::sin(start.phi), c = std::cos(start.phi);
  return specfun::lower_incomplete_gamma(nu, v * s * s) / g * specfun::lower_incomplete_gamma(nu, v * c * c) / g;
}

/// Closed form, up to a constant, of E[V0^{3/2-2nu} e^{-y V0}] started on the bisector of the pi/4 wedge:
///   (1+y)^{-(2nu-1/2)} (1+2y)^{-2} 2F1(1, 3/2; nu+1; 1/(2(1+2y)^2)).
inline double laplace_moment_pi8(double y, double nu, const SeriesControl& ctrl = {}) {
  if (!(y >= 0.0)) throw domain_error("laplace_moment_pi8: y must be >= 0");
  detail::check_nu(nu, 0.0, 0.5, "laplace_moment_pi8");
  const double q = 1.0 + 2.0 * y;
  return std::pow(1.0 + y, -(2.0 * nu - 0.5)) / (q * q) * specfun::hyp_2f1(1.0, 1.5, nu + 1.0, 0.5 / (q * q), ctrl);
}

/// The planar Brownian case nu = 1/2 of the moment: 1/(sqrt(1+y) [2(1+2y)^2 - 1]).
inline double laplace_moment_brownian(double y) {
  if (!(y >= 0.0)) throw domain_error("laplace_moment_brownian: y must be >= 0");
  const double q = 1.0 + 2.0 * y;
  return 1.0 / (std::sqrt(1.0 + y) * (2.0 * q * q - 1.0));
}

/// int_0^inf v^{3/2-2nu} e^{-yv} density_v0_integral(v, nu, pi/8) dv.
inline double laplace_moment_numeric(double y, double nu, const SeriesControl& ctrl = {}) {
  if (!(y >= 0.0)) throw domain_error("laplace_moment_numeric: y must be >= 0");
  detail::check_nu(nu, 0.0, 0.5, "laplace_moment_numeric");
  const double phi = std::numbers::pi / 8.0;
  const double pref = std::pow(std::sin(4.0 * phi), 2.0 * nu);
  // v^{3/2-2nu} v^{4nu-1} = v^{2nu+1/2}
  auto g = [&](double v) { return pref * std::exp(-y * v) * detail::integral_route_smooth(v, nu, phi, ctrl); };
  return specfun::integrate_power_half_line(2.0 * nu + 0.5, g, 2.0 / (1.0 + y), ctrl, 1e-11).value;
}

}  // namespace dunkl::hittime

#endif  // DUNKL_HITTIME_DENSITY_HPP
