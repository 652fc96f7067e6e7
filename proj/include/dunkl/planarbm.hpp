#ifndef DUNKL_PLANARBM_HPP
#define DUNKL_PLANARBM_HPP

#include <cmath>
#include <numbers>

#include "dunkl/errors.hpp"
#include "dunkl/hittime/series.hpp"
#include "dunkl/model.hpp"
#include "dunkl/specfun/bessel.hpp"

// Planar Brownian motion in the wedge of angle pi/(2p): exit-time tail in
// terms of the winding angle Theta_t of a motion started at rho e^{i0}.

namespace dunkl::planarbm {

/// W_p(x) = sgn sin(2px), period pi/p, zero on the lattice (pi/(2p)) Z.
inline int square_wave(int p, double x) {
  if (p < 1) throw domain_error("square_wave: p must be >= 1");
  const double r = x / (std::numbers::pi / (2.0 * p));
  const double k = std::floor(r);
  const double nearest = std::round(r);
  if (std::abs(r - nearest) <= 1e-12 * std::max(1.0, std::abs(r))) return 0;
  return std::fmod(std::abs(k), 2.0) == 0.0 ? 1 : -1;
}

struct SquareWaveSpec {
  int p = 1;

  double period() const { return std::numbers::pi / p; }
  int operator()(double x) const { return square_wave(p, x); }
};

/// E[cos(lambda Theta_t)] for planar Brownian motion started at distance rho from 0:
///   (sqrt(pi)/2) sqrt(rho^2/(2t)) e^{-x} [I_{(|l|-1)/2}(x) + I_{(|l|+1)/2}(x)],  x = rho^2/(4t).
inline double spitzer_cf(double lambda, double rho, double t) {
  if (!(rho > 0.0) || !(t > 0.0)) throw domain_error("spitzer_cf: rho and t must be > 0");
  const double l = std::abs(lambda);
  const double x = rho * rho / (4.0 * t);
  const double pref = 0.5 * std::sqrt(std::numbers::pi) * std::sqrt(2.0 * x);
  return pref * (specfun::bessel_i_scaled(0.5 * (l - 1.0), x) + specfun::bessel_i_scaled(0.5 * (l + 1.0), x));
}

/// Winding law of the angular part at time t.
struct WindingLaw {
  double rho = 1.0;
  double t = 1.0;

  void validate() const {
    if (!(rho > 0.0) || !(t > 0.0)) throw domain_error("WindingLaw: rho and t must be > 0");
  }
  double x() const { return rho * rho / (4.0 * t); }
  double cf(double lambda) const { return spitzer_cf(lambda, rho, t); }
};

/// int_0^pi sin((j+1) y) dy.
inline double coeff_S(int j) {
  if (j < 0) throw domain_error("coeff_S: j must be >= 0");
  return j % 2 == 0 ? 2.0 / (j + 1.0) : 0.0;
}

namespace detail {

inline void check_bm_args(double t, int p, double rho, double phi, const char* name) {
  if (p < 1) throw domain_error(std::string(name) + ": p must be >= 1");
  if (!(t > 0.0)) throw domain_error(std::string(name) + ": t must be > 0");
  validate_start(WedgeModel::equal(p, 1.0), {rho, phi});
}

}  // namespace detail

/// P(T0 > t) for planar Brownian motion in the wedge, as the Bessel series
///   (1/sqrt(pi)) sqrt(rho^2/(2t)) e^{-x} sum_{j in Z} [I_{|2j+1|p-1/2}(x) + I_{|2j+1|p+1/2}(x)]
///   sin((2j+1) 2p phi)/(2j+1),   x = rho^2/(4t),
/// with the j and -j-1 terms paired.
inline double bm_tail_bessel(double t, int p, double rho, double phi, const SeriesControl& ctrl = {}) {
  detail::check_bm_args(t, p, rho, phi, "bm_tail_bessel");
  const double x = rho * rho / (4.0 * t);
  const double pref = 2.0 / std::sqrt(std::numbers::pi) * std::sqrt(2.0 * x);
  auto term = [&](int j) -> hittime::SeriesTerm {
    const double n = 2.0 * j + 1.0;
    const double mag =
        pref * (specfun::bessel_i_scaled(n * p - 0.5, x) + specfun::bessel_i_scaled(n * p + 0.5, x)) / n;
    return {mag * std::sin(n * 2.0 * p * phi), mag};
  };
  return hittime::sum_polynomial_series(term, ctrl, "bm_tail_bessel");
}

/// P(T0 > t) = E[W_p(Theta_t + phi)] through the Fourier series of the square wave:
///   (4/pi) sum_{j>=0} spitzer_cf(2(2j+1)p) sin(2(2j+1)p phi)/(2j+1).
inline double bm_tail_squarewave(double t, int p, double rho, double phi, const SeriesControl& ctrl = {}) {
  detail::check_bm_args(t, p, rho, phi, "bm_tail_squarewave");
  auto term = [&](int j) -> hittime::SeriesTerm {
    const double n = 2.0 * j + 1.0;
    const double mag = 4.0 / std::numbers::pi * spitzer_cf(2.0 * n * p, rho, t) / n;
    return {mag * std::sin(n * 2.0 * p * phi), mag};
  };
  return hittime::sum_polynomial_series(term, ctrl, "bm_tail_squarewave");
}

}  // namespace dunkl::planarbm

#endif  // DUNKL_PLANARBM_HPP
