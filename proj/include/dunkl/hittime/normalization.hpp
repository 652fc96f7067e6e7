#ifndef DUNKL_HITTIME_NORMALIZATION_HPP
#define DUNKL_HITTIME_NORMALIZATION_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <tuple>

#include "dunkl/errors.hpp"
#include "dunkl/hittime/density.hpp"
#include "dunkl/hittime/tail.hpp"
#include "dunkl/model.hpp"
#include "dunkl/specfun/quadrature.hpp"

namespace dunkl::hittime {

/// Which unnormalized representation a constant belongs to.
enum class DensityTag { tail, series, integral, bessel, z2z2 };

inline const char* to_string(DensityTag tag) {
  switch (tag) {
    case DensityTag::tail: return "tail";
    case DensityTag::series: return "series";
    case DensityTag::integral: return "integral";
    case DensityTag::bessel: return "bessel";
    case DensityTag::z2z2: return "z2z2";
  }
  return "?";
}

inline DensityTag density_tag_from_string(const std::string& s) {
  if (s == "tail") return DensityTag::tail;
  if (s == "series") return DensityTag::series;
  if (s == "integral") return DensityTag::integral;
  if (s == "bessel") return DensityTag::bessel;
  if (s == "z2z2") return DensityTag::z2z2;
  throw domain_error("unknown density method '" + s + "'");
}

struct NormalizationKey {
  int p = 0;
  double nu0 = 0.0;
  double nu1 = 0.0;
  DensityTag tag = DensityTag::tail;
  auto operator<=>(const NormalizationKey&) const = default;
};

struct Normalization {
  NormalizationKey key;
  double constant = 0.0;
  double quadrature_error = 0.0;
};

namespace detail {

inline void check_route_model(DensityTag tag, const WedgeModel& m) {
  validate_model(m);
  switch (tag) {
    case DensityTag::tail: return;
    case DensityTag::series:
      if (!m.equal_multiplicities()) throw domain_error("series density needs k0 = k1");
      return;
    case DensityTag::integral:
    case DensityTag::bessel:
      if (m.p != 2 || !m.equal_multiplicities()) throw domain_error("this density route needs p = 2 and k0 = k1");
      if (tag == DensityTag::bessel && !(m.nu0() > 0.25))
        throw domain_error("bessel density route needs nu > 1/4");
      return;
    case DensityTag::z2z2:
      if (m.p != 1 || !m.equal_multiplicities()) throw domain_error("z2z2 density needs p = 1 and k0 = k1");
      return;
  }
}

}  // namespace detail

/// Unnormalized density of V0 at v for the chosen route.
inline double density_unnormalized(DensityTag tag, double v, const WedgeModel& m, double phi,
                                   const SeriesControl& ctrl = {}) {
  detail::check_route_model(tag, m);
  switch (tag) {
    case DensityTag::tail: return tail_density_v(v, m, phi, ctrl);
    case DensityTag::series: return density_series_equal_k(v, m.p, m.k0, phi, ctrl);
    case DensityTag::integral: return density_v0_integral(v, m.nu0(), phi, ctrl);
    case DensityTag::bessel: return density_v0_bessel(v, m.nu0(), phi, ctrl);
    case DensityTag::z2z2: return density_v0_z2z2(v, m.nu0(), phi);
  }
  return 0.0;
}

/// Power beta with density ~ v^beta near 0.
inline double density_exponent(DensityTag tag, const WedgeModel& m) {
  switch (tag) {
    case DensityTag::tail: return tail_density_exponent(m);
    case DensityTag::series: return 2.0 * m.p * m.nu0() - 1.0;
    case DensityTag::integral:
    case DensityTag::bessel: return 4.0 * m.nu0() - 1.0;
    case DensityTag::z2z2: return 2.0 * m.nu0() - 1.0;
  }
  return 0.0;
}

/// Constant c making c * (unnormalized form) a probability law, evaluated
/// from the start angle phi without caching. The tail form is pinned at v
/// large enough that the survival function has saturated; the density forms
/// are integrated over the half line.
inline Normalization compute_normalization(DensityTag tag, const WedgeModel& m, double phi,
                                           const SeriesControl& ctrl = {}) {
  detail::check_route_model(tag, m);
  validate_start(m, {1.0, phi});
  Normalization out{{m.p, m.nu0(), m.nu1(), tag}, 0.0, 0.0};
  if (tag == DensityTag::tail) {
    const double vs = tail_saturation_v(m, phi);
    const double s1 = tail_series_v(vs, m, phi, ctrl);
    const double s2 = tail_series_v(2.0 * vs, m, phi, ctrl);
    out.constant = 1.0 / s1;
    out.quadrature_error = std::abs(1.0 / s2 - out.constant);
    return out;
  }
  const double beta = density_exponent(tag, m);
  const double d = std::min(std::sin(phi), std::sin(m.wedge_angle() - phi));
  const double scale = std::max(1.0, 1.0 / (d * d));
  // Mass beyond tail_saturation_v is below double precision.
  const double cutoff = tail_saturation_v(m, phi);
  const auto res = specfun::integrate_power_half_line(
      beta, [&](double v) { return density_unnormalized(tag, v, m, phi, ctrl) / std::pow(v, beta); }, scale, ctrl,
      1e-11, cutoff);
  out.constant = 1.0 / res.value;
  out.quadrature_error = res.error / (res.value * res.value);
  return out;
}

/// Thread-safe memo of normalizing constants, keyed by (p, nu0, nu1, route).
/// Two threads missing the same key may both compute it; the results agree.
class NormalizationCache {
 public:
  Normalization get(DensityTag tag, const WedgeModel& m, double phi, const SeriesControl& ctrl = {}) {
    const NormalizationKey key{m.p, m.nu0(), m.nu1(), tag};
    {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find(key); it != table_.end()) return it->second;
    }
    Normalization n = compute_normalization(tag, m, phi, ctrl);
    std::unique_lock lock(mutex_);
    return table_.emplace(key, n).first->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

  void clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<NormalizationKey, Normalization> table_;
};

inline NormalizationCache& normalization_cache() {
  static NormalizationCache cache;
  return cache;
}

/// Cached normalizing constant; the first caller's phi is used to compute it.
inline Normalization normalize_density(DensityTag tag, const WedgeModel& m, double phi,
                                       const SeriesControl& ctrl = {}) {
  return normalization_cache().get(tag, m, phi, ctrl);
}

/// Probability density of V0 at v.
inline double density_v0(DensityTag tag, double v, const WedgeModel& m, double phi, const SeriesControl& ctrl = {}) {
  return normalize_density(tag, m, phi, ctrl).constant * density_unnormalized(tag, v, m, phi, ctrl);
}

/// Probability density of T0 at t, from the density of V0 = rho^2/(2t).
inline double density_t0(DensityTag tag, double t, const WedgeModel& m, const StartPoint& start,
                         const SeriesControl& ctrl = {}) {
  validate_start(m, start);
  if (!(t > 0.0)) throw domain_error("density_t0: t must be > 0");
  const double v = v_from_t(start.rho, t);
  return density_v0(tag, v, m, start.phi, ctrl) * v / t;
}

/// c * tail_hitting without projection; near saturation it can exceed 1 by rounding (~1e-11).
inline double tail_hitting_scaled(double t, const WedgeModel& m, const StartPoint& start,
                                  const SeriesControl& ctrl = {}) {
  return normalize_density(DensityTag::tail, m, start.phi, ctrl).constant * tail_hitting(t, m, start, ctrl);
}

/// P(T0 > t), clipped to [0, 1].
inline double tail_hitting_normalized(double t, const WedgeModel& m, const StartPoint& start,
                                      const SeriesControl& ctrl = {}) {
  return std::clamp(tail_hitting_scaled(t, m, start, ctrl), 0.0, 1.0);
}

}  // namespace dunkl::hittime

#endif  // DUNKL_HITTIME_NORMALIZATION_HPP
