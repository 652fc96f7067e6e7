#ifndef DUNKL_HITTIME_SERIES_HPP
#define DUNKL_HITTIME_SERIES_HPP

#include <cmath>
#include <limits>

#include "dunkl/errors.hpp"
#include "dunkl/model.hpp"

namespace dunkl::hittime {

/// One term of an orthogonal-polynomial series: its value and an upper bound
/// on its modulus that does not depend on where the polynomial is evaluated.
struct SeriesTerm {
  double value = 0.0;
  double envelope = 0.0;
};

/// Sums term(0), term(1), ... and stops once `consec_small` successive
/// non-vanishing envelopes are decreasing and below rel_tol |sum|. Terms with a
/// zero envelope (structural zeros) neither count nor reset the run, so a
/// polynomial that happens to vanish at the evaluation point cannot end the
/// sum early.
template <typename Term>
double sum_polynomial_series(Term&& term, const SeriesControl& ctrl, const char* name) {
  double sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  int small = 0;
  for (int j = 0;; ++j) {
    if (j >= ctrl.max_terms)
      throw nonconvergence_error(std::string(name) + ": max_terms reached", sum, j);
    const SeriesTerm t = term(j);
    if (t.envelope == 0.0) continue;
    if (!std::isfinite(t.value) || !std::isfinite(t.envelope))
      throw nonconvergence_error(std::string(name) + ": non-finite term", sum, j);
    sum += t.value;
    if (t.envelope <= ctrl.rel_tol * std::abs(sum) && t.envelope <= prev) {
      if (++small >= ctrl.consec_small) return sum;
    } else {
      small = 0;
    }
    prev = t.envelope;
  }
}

}  // namespace dunkl::hittime

#endif  // DUNKL_HITTIME_SERIES_HPP
