#ifndef DUNKL_SPECFUN_QUADRATURE_HPP
#define DUNKL_SPECFUN_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "dunkl/errors.hpp"
#include "dunkl/model.hpp"

namespace dunkl::specfun {

/// Gauss rule for the weight (1-x)^alpha (1+x)^beta on [-1, 1].
struct JacobiRule {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // sum to the total mass of the weight

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss rule for the symmetric Beta probability measure
/// mu^s(du) = Gamma(s+1/2)/(sqrt(pi) Gamma(s)) (1-u^2)^{s-1} du on [-1, 1].
struct QuadratureRule {
  double s = 1.0;
  std::vector<double> nodes;
  std::vector<double> weights;  // sum to 1

  std::size_t size() const noexcept { return nodes.size(); }

  template <typename F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

namespace detail {

// Eigenvalues of a symmetric tridiagonal matrix (implicit QL with Wilkinson
// shifts). d holds the diagonal, e the subdiagonal in e[1..n-1]. On return q
// holds the first component of each unit eigenvector.
inline void tridiagonal_eigen(std::vector<double>& d, std::vector<double> e, std::vector<double>& q) {
  const int n = static_cast<int>(d.size());
  q.assign(n, 0.0);
  if (n > 0) q[0] = 1.0;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  if (n > 0) e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw quadrature_error("Gauss-Jacobi: QL iteration did not converge", 0.0);
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = q[i + 1];
          q[i + 1] = s * q[i] + c * f;
          q[i] = c * q[i] - s * f;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
  std::vector<double> ds(n), qs(n);
  for (int i = 0; i < n; ++i) {
    ds[i] = d[order[i]];
    qs[i] = q[order[i]];
  }
  d = std::move(ds);
  q = std::move(qs);
}

// P_n^{(a,b)}(x) and its derivative by the three-term recurrence.
inline std::pair<double, double> jacobi_value_and_derivative(int n, double a, double b, double x) {
  auto value = [](int m, double aa, double bb, double xx) {
    if (m == 0) return 1.0;
    double p0 = 1.0;
    double p1 = 0.5 * (aa - bb + (aa + bb + 2.0) * xx);
    for (int k = 2; k <= m; ++k) {
      const double s = 2.0 * k + aa + bb;
      const double c1 = 2.0 * k * (k + aa + bb) * (s - 2.0);
      const double c2 = (s - 1.0) * (s * (s - 2.0) * xx + aa * aa - bb * bb);
      const double c3 = 2.0 * (k + aa - 1.0) * (k + bb - 1.0) * s;
      const double p2 = (c2 * p1 - c3 * p0) / c1;
      p0 = p1;
      p1 = p2;
    }
    return p1;
  };
  const double p = value(n, a, b, x);
  const double dp = n == 0 ? 0.0 : 0.5 * (n + a + b + 1.0) * value(n - 1, a + 1.0, b + 1.0, x);
  return {p, dp};
}

inline JacobiRule build_jacobi_rule(double alpha, double beta, int n) {
  if (!(alpha > -1.0 && beta > -1.0)) throw domain_error("Gauss-Jacobi: alpha, beta must be > -1");
  if (n < 1) throw domain_error("Gauss-Jacobi: n must be >= 1");
  const double ab = alpha + beta;
  std::vector<double> diag(n), off(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    if (k == 0)
      diag[k] = (beta - alpha) / (ab + 2.0);
    else
      diag[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    if (k >= 1) {
      double b2;
      if (k == 1)
        b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
      else
        b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
      off[k] = std::sqrt(b2);
    }
  }
  std::vector<double> first;
  tridiagonal_eigen(diag, off, first);

  // Golub-Welsch: w_i = mass * (first eigenvector component)^2. Nodes are
  // polished by Newton steps on P_n.
  const double mass = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                               std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  JacobiRule rule{alpha, beta, {}, {}};
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = diag[i];
    for (int it = 0; it < 8; ++it) {
      const auto [p, dp] = jacobi_value_and_derivative(n, alpha, beta, x);
      const double dx = p / dp;
      if (!std::isfinite(dx)) break;
      x -= dx;
      if (std::abs(dx) < 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    rule.nodes[i] = std::clamp(x, -1.0 + 1e-300, 1.0 - 1e-300);
    rule.weights[i] = first[i] * first[i];
  }
  // The squared components sum to one up to rounding.
  double total = 0.0;
  for (double w : rule.weights) total += w;
  for (double& w : rule.weights) w *= mass / total;
  return rule;
}

struct RuleCache {
  std::shared_mutex mutex;
  std::map<std::tuple<double, double, int>, std::shared_ptr<const JacobiRule>> rules;
};

inline RuleCache& rule_cache() {
  static RuleCache cache;
  return cache;
}

}  // namespace detail

/// Gauss-Jacobi rule, memoized; rules are immutable once built.
inline std::shared_ptr<const JacobiRule> gauss_jacobi(double alpha, double beta, int n) {
  auto& cache = detail::rule_cache();
  const auto key = std::make_tuple(alpha, beta, n);
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.rules.find(key); it != cache.rules.end()) return it->second;
  }
  auto rule = std::make_shared<const JacobiRule>(detail::build_jacobi_rule(alpha, beta, n));
  std::unique_lock lock(cache.mutex);
  return cache.rules.emplace(key, std::move(rule)).first->second;
}

inline std::shared_ptr<const JacobiRule> gauss_legendre(int n) { return gauss_jacobi(0.0, 0.0, n); }

/// n-point Gauss rule for the symmetric Beta distribution mu^s.
inline QuadratureRule gauss_jacobi_rule(double s, int n) {
  if (!(s > 0.0)) throw domain_error("gauss_jacobi_rule: s must be > 0");
  if (n < 2) throw domain_error("gauss_jacobi_rule: n must be >= 2");
  const auto base = gauss_jacobi(s - 1.0, s - 1.0, n);
  QuadratureRule rule{s, base->nodes, base->weights};
  // Enforce exact symmetry of the measure, then normalize to mass one.
  for (int i = 0, j = n - 1; i <= j; ++i, --j) {
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  double total = 0.0;
  for (double w : rule.weights) total += w;
  for (double& w : rule.weights) w /= total;
  return rule;
}

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  int nodes = 0;
};

/// Doubles the node count from ctrl.quad_nodes until successive results agree
/// to 1e-11 relative (or `abs_floor` absolute); at most 1024 nodes.
template <typename Rule, typename F>
AdaptiveResult integrate_doubling(Rule&& make_rule, F&& f, const SeriesControl& ctrl,
                                  double rel = 1e-11, double abs_floor = 0.0) {
  int n = ctrl.quad_nodes;
  double prev = make_rule(n)(f);
  for (n *= 2; n <= 1024; n *= 2) {
    const double cur = make_rule(n)(f);
    const double err = std::abs(cur - prev);
    if (err <= rel * std::abs(cur) || err <= abs_floor) return {cur, err, n};
    prev = cur;
  }
  throw quadrature_error("adaptive Gauss rule did not converge within 1024 nodes", std::abs(prev));
}

/// int f(u) mu^s(du), refined by node doubling.
template <typename F>
AdaptiveResult integrate_beta(double s, F&& f, const SeriesControl& ctrl, double rel = 1e-11) {
  return integrate_doubling(
      [s](int n) {
        return [rule = gauss_jacobi_rule(s, n)](auto&& g) { return rule.integrate(g); };
      },
      f, ctrl, rel);
}

/// int_lo^hi f(x) (x-lo)^beta (hi-x)^alpha dx with an n-point Gauss-Jacobi rule.
template <typename F>
double integrate_jacobi_interval(double lo, double hi, double alpha, double beta, int n, F&& f) {
  const auto rule = gauss_jacobi(alpha, beta, n);
  const double half = 0.5 * (hi - lo);
  const double scale = std::pow(half, alpha + beta + 1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule->size(); ++i)
    acc += rule->weights[i] * f(lo + half * (rule->nodes[i] + 1.0));
  return acc * scale;
}

template <typename F>
double integrate_legendre_interval(double lo, double hi, int n, F&& f) {
  return integrate_jacobi_interval(lo, hi, 0.0, 0.0, n, std::forward<F>(f));
}

/// int_0^inf v^beta g(v) dv for g smooth on [0, inf) and eventually decaying.
///
/// The panel [0, scale] carries the power as a Gauss-Jacobi weight; beyond it
/// panels of doubling width are added until two successive panels contribute
/// less than `rel` of the running total, or `cutoff` is reached.
template <typename G>
AdaptiveResult integrate_power_half_line(double beta, G&& g, double scale, const SeriesControl& ctrl,
                                         double rel = 1e-11,
                                         double cutoff = std::numeric_limits<double>::infinity()) {
  if (!(beta > -1.0)) throw domain_error("integrate_power_half_line: beta must be > -1");
  if (!(scale > 0.0)) throw domain_error("integrate_power_half_line: scale must be > 0");
  AdaptiveResult total = integrate_doubling(
      [&](int n) {
        return [&, n](auto&& f) { return integrate_jacobi_interval(0.0, scale, 0.0, beta, n, f); };
      },
      g, ctrl, rel);
  auto h = [&](double v) { return std::pow(v, beta) * g(v); };
  double lo = scale;
  double width = scale;
  int quiet = 0;
  for (int panel = 0; panel < 80; ++panel) {
    if (lo >= cutoff) return total;
    const double hi = std::min(lo + width, cutoff);
    const AdaptiveResult part = integrate_doubling(
        [lo, hi](int n) {
          return [lo, hi, n](auto&& f) { return integrate_legendre_interval(lo, hi, n, f); };
        },
        h, ctrl, rel, 1e-3 * rel * std::abs(total.value));
    total.value += part.value;
    total.error += part.error;
    total.nodes += part.nodes;
    if (std::abs(part.value) <= 1e-3 * rel * std::abs(total.value)) {
      if (++quiet >= 2) return total;
    } else {
      quiet = 0;
    }
    lo = hi;
    width *= 2.0;
  }
  throw quadrature_error("integrate_power_half_line: integrand does not decay", total.error);
}

}  // namespace dunkl::specfun

#endif  // DUNKL_SPECFUN_QUADRATURE_HPP
