#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "dunkl/hittime/density.hpp"
#include "dunkl/hittime/normalization.hpp"
#include "dunkl/hittime/tail.hpp"
#include "oracles.hpp"

using namespace dunkl;
using namespace dunkl::hittime;

namespace {

constexpr double pi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// Standard deviation of log(f/g) over a set of pairs.
double log_ratio_spread(const std::vector<double>& f, const std::vector<double>& g) {
  double mean = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) mean += std::log(f[i] / g[i]);
  mean /= f.size();
  double var = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = std::log(f[i] / g[i]) - mean;
    var += d * d;
  }
  return std::sqrt(var / f.size());
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, i / (n - 1.0)));
  return out;
}

}  // namespace

// ---------------------------------------------------------------- coefficients

TEST(TailCoefficient, ClosedFormMatchesQuadrature) {
  for (const WedgeModel m : {WedgeModel{2, 0.75, 0.75}, WedgeModel{3, 0.6, 0.9}, WedgeModel{1, 1.0, 0.55}})
    for (int j = 0; j <= 25; ++j) {
      // Structural zeros come out of quadrature as rounding noise on the scale of F(0).
      const double closed = coeff_F(j, m);
      const double quad = coeff_F_quadrature(j, m);
      const double scale = closed != 0.0 ? std::abs(closed) : std::abs(coeff_F(0, m));
      EXPECT_LE(std::abs(closed - quad), 1e-10 * scale) << "p=" << m.p << " j=" << j;
    }
}

TEST(TailCoefficient, OddTermsVanishForEqualMultiplicities) {
  for (double k : {0.55, 0.75, 1.0})
    for (int p : {1, 2, 3})
      for (int j = 1; j <= 20; j += 2) EXPECT_LE(std::abs(coeff_F(j, WedgeModel::equal(p, k))), 1e-12);
}

TEST(TailCoefficient, TableMatchesScalar) {
  const WedgeModel m{2, 0.7, 0.9};
  const auto c = TailCoefficients::compute(m, 6);
  ASSERT_EQ(c.F.size(), 6u);
  for (int j = 0; j < 6; ++j) {
    EXPECT_EQ(c.a[j], 2.0 * (j + 1));
    EXPECT_DOUBLE_EQ(c.b[j], 2.0 * (2 * j + 0.2 + 0.4 + 1.0));
    EXPECT_EQ(c.F[j], coeff_F(j, m));
  }
}

// ---------------------------------------------------------------- tail

TEST(Tail, QuarterPlaneFactorizesWithUnequalMultiplicities) {
  // Flipped p = 1 model: two independent one-dimensional hitting problems,
  // the wall theta = 0 (index nu0) seen at distance rho sin phi.
  for (const WedgeModel m : {WedgeModel{1, 0.7, 0.95}, WedgeModel{1, 0.95, 0.6}})
    for (double phi : {0.3, pi / 4, 1.2})
      for (double tr : {0.05, 0.3, 1.0, 4.0}) {
        const double v = 1.0 / (2.0 * tr);
        const double s = std::sin(phi), c = std::cos(phi);
        const double ref = oracle::gamma_p(m.nu0(), v * s * s) * oracle::gamma_p(m.nu1(), v * c * c);
        EXPECT_LE(rel(tail_hitting_normalized(tr, m, {1.0, phi}), ref), 1e-9)
            << "k0=" << m.k0 << " phi=" << phi << " t=" << tr;
      }
}

TEST(Tail, NormalizingConstantIsPowerOfTwo) {
  for (const WedgeModel m : {WedgeModel{2, 0.75, 0.75}, WedgeModel{3, 0.6, 0.9}, WedgeModel{1, 1.0, 0.55}}) {
    const auto n = compute_normalization(DensityTag::tail, m, 0.5 * m.wedge_angle());
    EXPECT_LE(rel(n.constant, std::pow(2.0, m.nu0() + m.nu1())), 1e-9) << "p=" << m.p;
  }
}

TEST(Tail, SaturatesAtSmallTime) {
  const WedgeModel m = WedgeModel::equal(2, 0.75);
  EXPECT_NEAR(tail_hitting_normalized(1e-3, m, {1.0, pi / 8}), 1.0, 1e-6);
  EXPECT_LT(tail_hitting_normalized(1e3, m, {1.0, pi / 8}), 1e-3);
}

TEST(Tail, ScalesWithRadius) {
  const WedgeModel m{3, 0.8, 0.65};
  for (double tr : {0.1, 0.7, 3.0})
    EXPECT_LE(rel(tail_hitting(tr * 4.0, m, {2.0, 0.2}), tail_hitting(tr, m, {1.0, 0.2})), 1e-13);
}

TEST(Tail, DensityIsDerivativeOfSeries) {
  const WedgeModel m{2, 0.6, 0.85};
  for (double v : {0.2, 1.0, 5.0, 30.0}) {
    const double h = 1e-5 * v;
    const double fd = (tail_series_v(v + h, m, 0.3) - tail_series_v(v - h, m, 0.3)) / (2.0 * h);
    EXPECT_LE(rel(fd, tail_density_v(v, m, 0.3)), 1e-6) << "v=" << v;
  }
}

TEST(Tail, RejectsBadArguments) {
  const WedgeModel m = WedgeModel::equal(2, 0.75);
  EXPECT_THROW(tail_hitting(0.0, m, {1.0, 0.3}), domain_error);
  EXPECT_THROW(tail_hitting(1.0, m, {1.0, pi / 4}), domain_error);
  EXPECT_THROW(tail_hitting(1.0, WedgeModel{2, 0.5, 0.5}, {1.0, 0.3}), domain_error);
  EXPECT_THROW(tail_density_v(-1.0, m, 0.3), domain_error);
}

TEST(Tail, ReportsTruncation) {
  SeriesControl ctrl;
  ctrl.max_terms = 8;
  EXPECT_THROW(tail_hitting(0.01, WedgeModel::equal(2, 0.75), {1.0, 0.05}, ctrl), nonconvergence_error);
  try {
    sum_polynomial_series([](int j) { return SeriesTerm{1.0 / (j + 1.0), 1.0 / (j + 1.0)}; }, ctrl, "harmonic");
    FAIL() << "expected nonconvergence";
  } catch (const nonconvergence_error& e) {
    EXPECT_EQ(e.terms(), 8);
    EXPECT_NEAR(e.partial_sum(), 761.0 / 280.0, 1e-14);
  }
}

TEST(Tail, StructuralZerosDoNotEndTheSum) {
  SeriesControl ctrl;
  const double s = sum_polynomial_series(
      [](int j) { return j % 2 ? SeriesTerm{} : SeriesTerm{std::pow(0.5, j), std::pow(0.5, j)}; }, ctrl, "even");
  EXPECT_NEAR(s, 4.0 / 3.0, 1e-12);
}

// ---------------------------------------------------------------- density routes

TEST(Density, EvenSeriesIsProportionalToTailDensity) {
  for (int p : {2, 3})
    for (double k : {0.6, 0.9}) {
      const WedgeModel m = WedgeModel::equal(p, k);
      const double phi = 0.37 * m.wedge_angle();
      std::vector<double> f, g;
      for (double v : log_grid(0.02, 25.0, 20)) {
        f.push_back(density_series_equal_k(v, p, k, phi));
        g.push_back(tail_density_v(v, m, phi));
      }
      EXPECT_LE(log_ratio_spread(f, g), 1e-9) << "p=" << p << " k=" << k;
    }
}

TEST(Density, LemmaOneGrid) {
  double worst = 0.0;
  for (double v : {0.1, 1.0, 5.0, 10.0})
    for (double k : {0.6, 0.8, 1.0})
      for (double phi : {0.1, pi / 8, 0.7}) worst = std::max(worst, rel(lemma1_lhs(v, k, phi), lemma1_rhs(v, k, phi)));
  EXPECT_LE(worst, 1e-8);
}

TEST(Density, LemmaOneAssemblesTheEvenSeries) {
  for (double k : {0.6, 0.8, 1.0})
    for (double phi : {0.1, pi / 8, 0.6})
      for (double v : {0.3, 2.0, 9.0}) {
        const double nu = k - 0.5;
        const double rhs = std::pow(std::sin(4.0 * phi), 2.0 * nu) * std::exp(-v) * std::pow(v, 4.0 * nu - 1.0) * 0.5 *
                           (lemma1_lhs(v, k, phi) + lemma1_lhs(v, k, pi / 4 - phi));
        EXPECT_LE(rel(density_series_equal_k(v, 2, k, phi), rhs), 1e-10) << "k=" << k << " phi=" << phi;
      }
}

TEST(Density, RoutesAgreeUpToConstant) {
  const auto grid = log_grid(0.01, 20.0, 50);
  for (double nu : {0.1, 0.3, 0.45, 0.5})
    for (double phi : {0.2, pi / 8}) {
      std::vector<double> s, in, be;
      for (double v : grid) {
        s.push_back(density_series_equal_k(v, 2, nu + 0.5, phi));
        in.push_back(density_v0_integral(v, nu, phi));
        if (nu > 0.25) be.push_back(density_v0_bessel(v, nu, phi));
      }
      for (double x : s) EXPECT_GT(x, 0.0);
      for (double x : in) EXPECT_GT(x, 0.0);
      EXPECT_LE(log_ratio_spread(s, in), 1e-6) << "nu=" << nu;
      if (!be.empty()) {
        for (double x : be) EXPECT_GT(x, 0.0);
        EXPECT_LE(log_ratio_spread(s, be), 1e-6) << "nu=" << nu;
        EXPECT_LE(log_ratio_spread(in, be), 1e-6) << "nu=" << nu;
      }
    }
}

TEST(Density, BesselRouteDomain) {
  EXPECT_THROW(density_v0_bessel(1.0, 0.2, 0.3), domain_error);
  EXPECT_THROW(density_v0_bessel(1.0, 0.3, 0.9), domain_error);
  EXPECT_NO_THROW(density_v0_bessel(1.0, 0.5, 0.3));
}

TEST(Density, QuarterPlaneMatchesMaximumOfGammas) {
  // V0 = max(G1 / sin^2 phi, G2 / cos^2 phi) with G1, G2 ~ Gamma(nu):
  // density = f1 F2 + f2 F1 computed from Boost's incomplete gamma.
  for (double nu : {0.15, 0.25, 0.4})
    for (double phi : {pi / 6, pi / 4}) {
      const double s2 = std::sin(phi) * std::sin(phi), c2 = std::cos(phi) * std::cos(phi);
      std::vector<double> f, g;
      for (double v : log_grid(0.05, 20.0, 40)) {
        using boost::math::gamma_p;
        using boost::math::gamma_p_derivative;
        g.push_back(s2 * gamma_p_derivative(nu, v * s2) * gamma_p(nu, v * c2) +
                    c2 * gamma_p_derivative(nu, v * c2) * gamma_p(nu, v * s2));
        f.push_back(density_v0_z2z2(v, nu, phi));
      }
      EXPECT_LE(log_ratio_spread(f, g), 1e-10) << "nu=" << nu;
      EXPECT_LE(rel(f[7] / g[7], std::tgamma(nu) * std::tgamma(nu)), 1e-12);
    }
}

TEST(Density, QuarterPlaneTailIsProductOfGammas) {
  for (double nu : {0.2, 0.5})
    for (double tr : {0.1, 1.0, 5.0}) {
      const double v = 1.0 / (2.0 * tr);
      const double s = std::sin(0.4), c = std::cos(0.4);
      EXPECT_LE(rel(tail_z2z2(tr, nu, {1.0, 0.4}), oracle::gamma_p(nu, v * s * s) * oracle::gamma_p(nu, v * c * c)),
                1e-12);
    }
}

TEST(Density, LaplaceMomentClosedForm) {
  for (double nu : {0.3, 0.4, 0.5}) {
    std::vector<double> ratio;
    for (double y : {0.0, 0.5, 1.0, 2.0, 5.0}) ratio.push_back(laplace_moment_numeric(y, nu) / laplace_moment_pi8(y, nu));
    for (double r : ratio) EXPECT_LE(rel(r, ratio.front()), 1e-4) << "nu=" << nu;
  }
}

TEST(Density, LaplaceMomentReducesToBrownianCase) {
  const double c = laplace_moment_pi8(0.0, 0.5) / laplace_moment_brownian(0.0);
  for (double y : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 50.0})
    EXPECT_LE(rel(laplace_moment_pi8(y, 0.5), c * laplace_moment_brownian(y)), 1e-8) << "y=" << y;
  EXPECT_THROW(laplace_moment_pi8(-0.1, 0.5), domain_error);
}

// ---------------------------------------------------------------- normalization

TEST(Normalization, IndependentOfStartAngle) {
  struct Case {
    DensityTag tag;
    WedgeModel m;
  };
  const std::vector<Case> cases{{DensityTag::tail, {2, 0.75, 0.75}}, {DensityTag::tail, {3, 0.6, 0.95}},
                                {DensityTag::series, {3, 0.8, 0.8}}, {DensityTag::integral, {2, 0.8, 0.8}},
                                {DensityTag::bessel, {2, 0.9, 0.9}}, {DensityTag::z2z2, {1, 0.7, 0.7}}};
  for (const auto& c : cases) {
    const double w = c.m.wedge_angle();
    const double ref = compute_normalization(c.tag, c.m, 0.5 * w).constant;
    for (double f : {0.15, 0.3, 0.8})
      EXPECT_LE(rel(compute_normalization(c.tag, c.m, f * w).constant, ref), 1e-6)
          << to_string(c.tag) << " frac=" << f;
  }
}

TEST(Normalization, DensityFormsIntegrateToKnownMass) {
  // z2z2 density has total mass Gamma(nu)^2; series density has the tail's saturation value.
  const auto z = compute_normalization(DensityTag::z2z2, WedgeModel::equal(1, 0.8), 0.5);
  EXPECT_LE(rel(1.0 / z.constant, std::pow(std::tgamma(0.3), 2)), 1e-9);
  const WedgeModel m = WedgeModel::equal(2, 0.75);
  const auto t = compute_normalization(DensityTag::tail, m, 0.3);
  // tail_density_v integrates to the saturated tail series.
  const double mass = 1.0 / [&] {
    const double beta = density_exponent(DensityTag::tail, m);
    return specfun::integrate_power_half_line(
               beta, [&](double v) { return tail_density_v(v, m, 0.3) / std::pow(v, beta); }, 8.0, {}, 1e-11)
        .value;
  }();
  EXPECT_LE(rel(mass, t.constant), 1e-8);
}

TEST(Normalization, CacheIsKeyedByModelAndRoute) {
  NormalizationCache cache;
  const WedgeModel m = WedgeModel::equal(2, 0.75);
  const auto a = cache.get(DensityTag::tail, m, 0.3);
  const auto b = cache.get(DensityTag::tail, m, 0.1);
  EXPECT_EQ(a.constant, b.constant);
  EXPECT_EQ(cache.size(), 1u);
  cache.get(DensityTag::integral, m, 0.3);
  EXPECT_EQ(cache.size(), 2u);
  cache.clear();
  EXPECT_EQ(cache.size(), 0u);
}

TEST(Normalization, RouteRestrictions) {
  EXPECT_THROW(compute_normalization(DensityTag::integral, WedgeModel::equal(3, 0.75), 0.2), domain_error);
  EXPECT_THROW(compute_normalization(DensityTag::series, WedgeModel{2, 0.6, 0.7}, 0.2), domain_error);
  EXPECT_THROW(compute_normalization(DensityTag::z2z2, WedgeModel::equal(2, 0.7), 0.2), domain_error);
  EXPECT_THROW(density_tag_from_string("nope"), domain_error);
  EXPECT_EQ(density_tag_from_string("bessel"), DensityTag::bessel);
}

TEST(Normalization, NormalizedRoutesAgree) {
  const WedgeModel m = WedgeModel::equal(2, 0.85);
  for (double v : {0.05, 0.8, 4.0, 15.0}) {
    const double ref = density_v0(DensityTag::tail, v, m, 0.3);
    for (DensityTag tag : {DensityTag::series, DensityTag::integral, DensityTag::bessel})
      EXPECT_LE(rel(density_v0(tag, v, m, 0.3), ref), 1e-7) << to_string(tag) << " v=" << v;
  }
}

TEST(Normalization, TailIsMonotoneAndBounded) {
  for (const WedgeModel m : {WedgeModel{2, 0.75, 0.75}, WedgeModel{3, 0.55, 1.0}, WedgeModel{1, 0.9, 0.6}})
    for (double frac : {0.1, 0.5, 0.9}) {
      const StartPoint x{1.0, frac * m.wedge_angle()};
      double prev = 1.0;
      for (double tr : log_grid(1e-3, 1e3, 60)) {
        const double s = tail_hitting_normalized(tr, m, x);
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, 1.0);
        // Successive values may tie up to rounding of the series (~1e-12).
        EXPECT_LE(s, prev + 1e-12) << "t=" << tr;
        prev = s;
        // Clipping only ever removes rounding noise.
        EXPECT_LE(std::abs(tail_hitting_scaled(tr, m, x) - s), 1e-10);
      }
    }
}

TEST(Normalization, TimeDensityIntegratesTailDrop) {
  const WedgeModel m = WedgeModel::equal(2, 0.75);
  const StartPoint x{1.3, 0.25};
  const double t1 = 0.2, t2 = 1.5;
  const double drop = tail_hitting_normalized(t1, m, x) - tail_hitting_normalized(t2, m, x);
  const double integral =
      specfun::integrate_legendre_interval(t1, t2, 64, [&](double t) { return density_t0(DensityTag::tail, t, m, x); });
  EXPECT_LE(rel(integral, drop), 1e-9);
}
