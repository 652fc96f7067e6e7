#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dunkl/hittime.hpp"
#include "dunkl/mcsim.hpp"
#include "dunkl/planarbm.hpp"

using namespace dunkl;
using namespace dunkl::mcsim;

namespace {

constexpr double pi = std::numbers::pi;

McConfig small_config(std::size_t n) {
  McConfig cfg;
  cfg.n_paths = n;
  cfg.dt0 = 4e-3;
  cfg.t_max = 20.0;
  return cfg;
}

}  // namespace

TEST(McConfig, Validation) {
  const double w = pi / 4;
  McConfig cfg;
  EXPECT_NO_THROW(cfg.validate(w));
  cfg.n_paths = 0;
  EXPECT_THROW(cfg.validate(w), config_error);
  cfg = {};
  cfg.eps_boundary = 0.1;
  EXPECT_THROW(cfg.validate(w), config_error);
  cfg = {};
  cfg.t_max = std::numeric_limits<double>::infinity();
  EXPECT_THROW(cfg.validate(w), config_error);
  cfg = {};
  cfg.dt0 = -1.0;
  EXPECT_THROW(simulate_hitting(WedgeModel::equal(2, 0.75), {1.0, 0.3}, cfg), config_error);
}

TEST(Rng, PathStreamsAreDeterministicAndDistinct) {
  auto a = path_engine(7, 3), b = path_engine(7, 3), c = path_engine(7, 4), d = path_engine(8, 3);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

TEST(Parallel, ResultIndependentOfThreadCount) {
  auto f = [](std::size_t i) { return static_cast<double>(path_engine(1, i)() % 1000); };
  EXPECT_EQ(map_paths<double>(5000, 1, f), map_paths<double>(5000, 3, f));
  EXPECT_THROW(map_paths<int>(100, 2, [](std::size_t i) -> int { throw std::runtime_error(std::to_string(i)); }),
               std::runtime_error);
}

TEST(BesselBridge, DimensionOneIsReflectedBrownianMotion) {
  for (double z : {0.01, 0.3, 2.0, 10.0}) EXPECT_NEAR(detail::bessel_bridge_survival(0.0, z, 1.0, 1.0), std::tanh(z), 1e-13);
  EXPECT_EQ(detail::bessel_bridge_survival(0.5, 0.1, 0.1, 1.0), 1.0);
  const double s = detail::bessel_bridge_survival(0.25, 0.1, 0.1, 0.1);
  EXPECT_GT(s, 0.0);
  EXPECT_LT(s, 1.0);
}

TEST(SimulateHitting, BitIdenticalReruns) {
  McConfig cfg = small_config(2000);
  cfg.threads = 1;
  const auto a = simulate_hitting(WedgeModel::equal(2, 0.75), {1.0, pi / 8}, cfg);
  cfg.threads = 3;
  const auto b = simulate_hitting(WedgeModel::equal(2, 0.75), {1.0, pi / 8}, cfg);
  EXPECT_EQ(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].path_index, i);
}

TEST(SimulateHitting, CensoringIsFlagged) {
  McConfig cfg = small_config(500);
  cfg.t_max = 0.05;
  const auto s = simulate_hitting(WedgeModel::equal(2, 0.75), {1.0, pi / 8}, cfg);
  std::size_t censored = 0;
  for (const auto& h : s) {
    if (h.censored) {
      ++censored;
      EXPECT_EQ(h.t0, cfg.t_max);
    } else {
      EXPECT_LT(h.t0, cfg.t_max);
      EXPECT_GT(h.t0, 0.0);
    }
  }
  EXPECT_GT(censored, 300u);
  EXPECT_EQ(s.size(), 500u);
}

TEST(EstimateTail, BasicProperties) {
  std::vector<HittingSample> s;
  for (int i = 0; i < 100000; ++i) s.push_back({i % 2 ? 0.5 : 2.0, false, static_cast<std::size_t>(i)});
  const auto c = estimate_tail(s, {0.0, 1.0, 3.0}, 5.0);
  EXPECT_EQ(c.values[0], 1.0);
  EXPECT_EQ((*c.std_errors)[0], 0.0);
  EXPECT_EQ(c.values[1], 0.5);
  EXPECT_NEAR((*c.std_errors)[1], 0.00158, 1e-5);
  EXPECT_EQ(c.values[2], 0.0);
  EXPECT_THROW(estimate_tail(s, {1.0, 5.0}, 5.0), domain_error);
  EXPECT_THROW(estimate_tail({}, {1.0}, 5.0), domain_error);
  // Censored paths count as alive below the horizon.
  s[0].censored = true;
  s[0].t0 = 5.0;
  EXPECT_EQ(estimate_tail(s, {4.0}, 5.0).values[0], 1.0 / 100000);
}

TEST(EstimateTail, MonotoneOnSimulatedPaths) {
  const auto s = simulate_hitting(WedgeModel::equal(3, 0.8), {1.0, 0.2}, small_config(3000));
  std::vector<double> grid;
  for (double t = 0.01; t < 10.0; t *= 1.5) grid.push_back(t);
  const auto c = estimate_tail(s, grid, 20.0);
  for (std::size_t i = 1; i < c.size(); ++i) EXPECT_LE(c.values[i], c.values[i - 1]);
}

TEST(SimulateHitting, QuarterPlaneMatchesClosedForm) {
  const WedgeModel m = WedgeModel::equal(1, 0.75);
  const StartPoint x{1.0, 0.5};
  const auto c = estimate_tail(simulate_hitting(m, x, small_config(20000)), {0.1, 0.3, 1.0, 3.0}, 20.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double exact = hittime::tail_z2z2(c.abscissae[i], m.nu0(), x);
    EXPECT_LE(std::abs(c.values[i] - exact), 3.0 * (*c.std_errors)[i]) << "t=" << c.abscissae[i];
  }
}

TEST(SimulateHitting, UnequalMultiplicitiesMatchTail) {
  const WedgeModel m{2, 0.65, 0.9};
  const StartPoint x{1.3, 0.3};
  const auto c = estimate_tail(simulate_hitting(m, x, small_config(20000)), {0.1, 0.4, 1.5}, 20.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double exact = hittime::tail_hitting_normalized(c.abscissae[i], m, x);
    EXPECT_LE(std::abs(c.values[i] - exact), 3.0 * (*c.std_errors)[i]) << "t=" << c.abscissae[i];
  }
}

TEST(SimulateHitting, NullMultiplicityIsPlanarBrownianMotion) {
  const auto c =
      estimate_tail(simulate_hitting(WedgeModel::equal(2, 1.0), {1.0, pi / 8}, small_config(20000)), {0.05, 0.2}, 20.0);
  for (std::size_t i = 0; i < c.size(); ++i)
    EXPECT_LE(std::abs(c.values[i] - planarbm::bm_tail_bessel(c.abscissae[i], 2, 1.0, pi / 8)),
              3.0 * (*c.std_errors)[i]);
}

TEST(SimulateHitting, StandardErrorScalesAsRootN) {
  const WedgeModel m = WedgeModel::equal(2, 0.75);
  auto se = [&](std::size_t n) {
    return (*estimate_tail(simulate_hitting(m, {1.0, pi / 8}, small_config(n)), {0.3}, 20.0).std_errors)[0];
  };
  const double s1 = se(4000), s2 = se(8000), s4 = se(16000);
  EXPECT_NEAR(s2 / s1, 1.0 / std::sqrt(2.0), 0.2 / std::sqrt(2.0));
  EXPECT_NEAR(s4 / s1, 0.5, 0.1);
}

TEST(SimulateHitting, HalvingTheStepStaysWithinNoise) {
  const WedgeModel m = WedgeModel::equal(2, 0.75);
  McConfig coarse = small_config(20000), fine = small_config(20000);
  fine.dt0 = 0.5 * coarse.dt0;
  const std::vector<double> grid{0.1, 0.5, 2.0};
  const auto a = estimate_tail(simulate_hitting(m, {1.0, pi / 8}, coarse), grid, 20.0);
  const auto b = estimate_tail(simulate_hitting(m, {1.0, pi / 8}, fine), grid, 20.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double band = 2.0 * std::hypot((*a.std_errors)[i], (*b.std_errors)[i]);
    EXPECT_LE(std::abs(a.values[i] - b.values[i]), band) << "t=" << grid[i];
  }
}

// ---------------------------------------------------------------- planar BM

namespace {

const std::vector<WindingSample>& bm_samples() {
  static const std::vector<WindingSample> s = [] {
    McConfig cfg;
    cfg.n_paths = 20000;
    cfg.dt0 = 2e-4;
    return simulate_bm_winding({1.0, pi / 8}, 0.1, 2, cfg);
  }();
  return s;
}

}  // namespace

TEST(SimulateBm, ExitTailMatchesBesselSeries) {
  const auto e = estimate_exit_tail(bm_samples());
  EXPECT_LE(std::abs(e.value - planarbm::bm_tail_bessel(0.1, 2, 1.0, pi / 8)), 3.0 * e.std_error);
}

TEST(SimulateBm, WindingCharacteristicFunction) {
  const auto cf = estimate_winding_cf(bm_samples(), 4.0, pi / 8);
  EXPECT_LE(std::abs(cf.value - planarbm::spitzer_cf(4.0, 1.0, 0.1)), 3.0 * cf.std_error);
  const auto sn = estimate_winding_sine(bm_samples(), 4.0, pi / 8);
  EXPECT_LE(std::abs(sn.value), 3.0 * sn.std_error);
}

TEST(SimulateBm, SquareWaveMeanIsTheTail) {
  const auto w = estimate_wp_mean(bm_samples(), 2);
  EXPECT_LE(std::abs(w.value - planarbm::bm_tail_bessel(0.1, 2, 1.0, pi / 8)), 3.0 * w.std_error);
  // Decomposition over {T0 >= t} and {T0 < t}: W_p = 1 on paths still inside.
  const auto in = estimate_exit_tail(bm_samples());
  const auto ind = estimate_wp_indicator(bm_samples(), 2);
  EXPECT_NEAR(w.value, in.value + ind.value, 1e-12);
  // Reflection after the exit flips W_p, so the exit part averages out.
  EXPECT_LE(std::abs(ind.value), 3.0 * ind.std_error);
}

TEST(SimulateBm, LargeHorizonBothSidesVanish) {
  McConfig cfg;
  cfg.n_paths = 4000;
  cfg.dt0 = 5e-3;
  const auto s = simulate_bm_winding({1.0, pi / 8}, 20.0, 2, cfg);
  const auto in = estimate_exit_tail(s);
  const auto ind = estimate_wp_indicator(s, 2);
  EXPECT_LE(in.value, 3.0 * std::sqrt(1.0 / 4000) + planarbm::bm_tail_bessel(20.0, 2, 1.0, pi / 8));
  EXPECT_LE(std::abs(ind.value), 3.0 * ind.std_error + 1e-12);
}

TEST(SimulateBm, ReproducibleAndLiftingGuard) {
  McConfig cfg;
  cfg.n_paths = 300;
  cfg.dt0 = 1e-3;
  cfg.threads = 1;
  const auto a = simulate_bm_winding({1.0, 0.3}, 0.2, 2, cfg);
  cfg.threads = 2;
  EXPECT_EQ(a, simulate_bm_winding({1.0, 0.3}, 0.2, 2, cfg));
  cfg.lifting_threshold = 1e-4;
  cfg.max_halvings = 0;
  EXPECT_THROW(simulate_bm_winding({1.0, 0.3}, 0.2, 2, cfg), lifting_error);
  cfg.max_halvings = 12;
  cfg.lifting_threshold = 0.05;
  cfg.dt0 = 0.1;
  const auto r = simulate_bm_winding({1.0, 0.3}, 0.2, 2, cfg);
  int refined = 0;
  for (const auto& s : r) refined += s.halvings > 0;
  EXPECT_GT(refined, 0);
}
