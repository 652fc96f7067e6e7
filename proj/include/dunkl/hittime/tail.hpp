#ifndef DUNKL_HITTIME_TAIL_HPP
#define DUNKL_HITTIME_TAIL_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dunkl/errors.hpp"
#include "dunkl/hittime/series.hpp"
#include "dunkl/model.hpp"
#include "dunkl/specfun/hypergeometric.hpp"
#include "dunkl/specfun/orthopoly.hpp"
#include "dunkl/specfun/quadrature.hpp"

// Survival function of the first hitting time T0 of the wedge boundary by the
// radial Dunkl process with multiplicities 1 - k0, 1 - k1, expanded in the
// orthonormal Jacobi basis p_j^{(nu0, nu1)}(cos 2p phi):
//
//   P(T0 > t) = c sin^{2nu0}(p phi) cos^{2nu1}(p phi) e^{-v}
//               sum_j F(j) v^{p(j+nu0+nu1)} 1F1(a_j+1, b_j+1, v) p_j(cos 2p phi),
//
// v = rho^2/(2t), a_j = p(j+1), b_j = p(2j+nu0+nu1+1),
// F(j) = Gamma(a_j+1)/Gamma(b_j+1) int_{-1}^{1} p_j(s) ds.
//
// The first Jacobi parameter nu0 belongs to the wall theta = 0, matching the
// factor sin^{2nu0}(p phi); with k0 = k1 the order is immaterial.

namespace dunkl::hittime {

inline double a_coeff(const WedgeModel& m, int j) { return m.p * (j + 1.0); }
inline double b_coeff(const WedgeModel& m, int j) { return m.p * (2.0 * j + m.nu0() + m.nu1() + 1.0); }

/// ln |Gamma(a_j+1)/Gamma(b_j+1)|.
inline double log_gamma_ratio(const WedgeModel& m, int j) {
  return std::lgamma(a_coeff(m, j) + 1.0) - std::lgamma(b_coeff(m, j) + 1.0);
}

/// F(j) through the closed form of int P_j over [-1, 1].
inline double coeff_F(int j, const WedgeModel& model, const SeriesControl& = {},
                      specfun::NormReading reading = specfun::NormReading::orthonormal) {
  if (j < 0) throw domain_error("coeff_F: j must be >= 0");
  const double a = model.nu0(), b = model.nu1();
  const double integral = specfun::jacobi_integral(j, a, b);
  if (integral == 0.0) return 0.0;
  return std::exp(log_gamma_ratio(model, j)) * integral / specfun::jacobi_norm_divisor(j, a, b, reading);
}

/// F(j) with int P_j computed by Gauss-Legendre quadrature instead.
inline double coeff_F_quadrature(int j, const WedgeModel& model, const SeriesControl& ctrl = {},
                                 specfun::NormReading reading = specfun::NormReading::orthonormal) {
  if (j < 0) throw domain_error("coeff_F_quadrature: j must be >= 0");
  const double a = model.nu0(), b = model.nu1();
  const double integral = specfun::integrate_legendre_interval(
      -1.0, 1.0, std::max(ctrl.quad_nodes, j + 2), [&](double s) { return specfun::jacobi_p(j, a, b, s); });
  return std::exp(log_gamma_ratio(model, j)) * integral / specfun::jacobi_norm_divisor(j, a, b, reading);
}

/// First n coefficients of the tail series.
struct TailCoefficients {
  int p = 0;
  double nu0 = 0.0;
  double nu1 = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> F;

  static TailCoefficients compute(const WedgeModel& model, int n,
                                  specfun::NormReading reading = specfun::NormReading::orthonormal) {
    validate_model(model);
    TailCoefficients c{model.p, model.nu0(), model.nu1(), {}, {}, {}};
    for (int j = 0; j < n; ++j) {
      c.a.push_back(a_coeff(model, j));
      c.b.push_back(b_coeff(model, j));
      c.F.push_back(coeff_F(j, model, {}, reading));
    }
    return c;
  }
};

namespace detail {

inline double jacobi_envelope(int j, double a, double b, double divisor) {
  // max_{[-1,1]} |P_j^{(a,b)}| is attained at an endpoint when max(a, b) >= -1/2.
  double up = 1.0, down = 1.0;
  for (int i = 0; i < j; ++i) {
    up *= (a + 1.0 + i) / (i + 1.0);
    down *= (b + 1.0 + i) / (i + 1.0);
  }
  return std::max(std::abs(up), std::abs(down)) / divisor;
}

inline double angular_prefactor(const WedgeModel& m, double phi) {
  return std::pow(std::sin(m.p * phi), 2.0 * m.nu0()) * std::pow(std::cos(m.p * phi), 2.0 * m.nu1());
}

/// Shared driver for the tail series and its term-wise v-derivative.
inline double tail_sum(double v, const WedgeModel& model, double phi, const SeriesControl& ctrl, bool derivative,
                       specfun::NormReading reading, const char* name) {
  const double a = model.nu0(), b = model.nu1();
  const double x = std::cos(2.0 * model.p * phi);
  const double logv = std::log(v);
  auto term = [&](int j) -> SeriesTerm {
    const double integral = specfun::jacobi_integral(j, a, b);
    if (integral == 0.0) return {};
    const double divisor = specfun::jacobi_norm_divisor(j, a, b, reading);
    const double aj = a_coeff(model, j), bj = b_coeff(model, j);
    const double m = model.p * (j + a + b);
    double log_mag;
    if (!derivative) {
      const auto f = specfun::hyp_1f1_scaled(aj + 1.0, bj + 1.0, v, ctrl);
      log_mag = log_gamma_ratio(model, j) + m * logv + std::log(f.mantissa) + f.log_scale - v;
    } else {
      // d/dv [v^m e^{-v} 1F1(a+1, b+1, v)] = m v^{m-1} e^{-v} 1F1(a, b+1, v)
      const auto f = specfun::hyp_1f1_scaled(aj, bj + 1.0, v, ctrl);
      log_mag = log_gamma_ratio(model, j) + std::log(m) + (m - 1.0) * logv + std::log(f.mantissa) +
                f.log_scale - v;
    }
    // One divisor belongs to F(j), the other to p_j(cos 2p phi).
    const double mag = std::exp(log_mag) * std::abs(integral) / divisor;
    const double sign = integral < 0.0 ? -1.0 : 1.0;
    const double poly = specfun::detail::jacobi_recurrence(j, a, b, x) / divisor;
    return {sign * mag * poly, mag * jacobi_envelope(j, a, b, divisor)};
  };
  return angular_prefactor(model, phi) * sum_polynomial_series(term, ctrl, name);
}

}  // namespace detail

/// Tail series without the normalizing constant.
inline double tail_hitting(double t, const WedgeModel& model, const StartPoint& start, const SeriesControl& ctrl = {},
                           specfun::NormReading reading = specfun::NormReading::orthonormal) {
  validate_model(model);
  validate_start(model, start);
  if (!(t > 0.0)) throw domain_error("tail_hitting: t must be > 0");
  return detail::tail_sum(v_from_t(start.rho, t), model, start.phi, ctrl, false, reading, "tail_hitting");
}

/// Same series as a function of v = rho^2/(2t); it is the CDF of V0 up to the constant.
inline double tail_series_v(double v, const WedgeModel& model, double phi, const SeriesControl& ctrl = {},
                            specfun::NormReading reading = specfun::NormReading::orthonormal) {
  if (!(v > 0.0)) return 0.0;
  return detail::tail_sum(v, model, phi, ctrl, false, reading, "tail_series_v");
}

/// d/dv of tail_series_v: the density of V0 up to the same constant.
inline double tail_density_v(double v, const WedgeModel& model, double phi, const SeriesControl& ctrl = {},
                             specfun::NormReading reading = specfun::NormReading::orthonormal) {
  if (!(v > 0.0)) throw domain_error("tail_density_v: v must be > 0");
  return detail::tail_sum(v, model, phi, ctrl, true, reading, "tail_density_v");
}

/// Power of v governing tail_density_v near v = 0.
inline double tail_density_exponent(const WedgeModel& model) { return model.p * (model.nu0() + model.nu1()) - 1.0; }

/// v beyond which P(V0 > v) is below 1e-17 when started at angle phi: the
/// closest wall is at distance rho d, and the one-dimensional hitting law
/// bounds the tail by roughly exp(-v d^2).
inline double tail_saturation_v(const WedgeModel& model, double phi) {
  const double d = std::min(std::sin(phi), std::sin(model.wedge_angle() - phi));
  return 45.0 / (d * d);
}

}  // namespace dunkl::hittime

#endif  // DUNKL_HITTIME_TAIL_HPP
