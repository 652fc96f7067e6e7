#ifndef DUNKL_MODEL_HPP
#define DUNKL_MODEL_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dunkl/errors.hpp"

namespace dunkl {

/// Even dihedral wedge of angle pi/(2p) with multiplicities (k0, k1).
///
/// k0 is attached to the wall theta = 0 and k1 to the wall theta = pi/(2p).
/// p = 1 is the abelian case Z2 x Z2 (quarter plane).
struct WedgeModel {
  int p = 2;
  double k0 = 0.75;
  double k1 = 0.75;

  double nu0() const noexcept { return k0 - 0.5; }
  double nu1() const noexcept { return k1 - 0.5; }
  double gamma() const noexcept { return p * (k0 + k1); }
  double wedge_angle() const noexcept { return std::numbers::pi / (2.0 * p); }
  bool equal_multiplicities() const noexcept { return k0 == k1; }

  /// Multiplicities 1 - k_j of the process that is actually simulated.
  double flipped_k0() const noexcept { return 1.0 - k0; }
  double flipped_k1() const noexcept { return 1.0 - k1; }

  static WedgeModel equal(int p, double k) { return WedgeModel{p, k, k}; }
};

/// Polar starting point x = rho e^{i phi}.
struct StartPoint {
  double rho = 1.0;
  double phi = std::numbers::pi / 8.0;
};

/// Truncation and tolerance policy shared by every series and quadrature.
struct SeriesControl {
  double rel_tol = 1e-12;
  int max_terms = 500;
  int quad_nodes = 64;
  int consec_small = 3;

  void validate() const {
    if (!(rel_tol > 0.0)) throw config_error("SeriesControl: rel_tol must be > 0");
    if (max_terms < 8) throw config_error("SeriesControl: max_terms must be >= 8");
    if (quad_nodes < 4) throw config_error("SeriesControl: quad_nodes must be >= 4");
    if (consec_small < 1) throw config_error("SeriesControl: consec_small must be >= 1");
  }
};

/// Grid of abscissae with values and, for Monte Carlo output, standard errors.
struct Curve {
  std::vector<double> abscissae;
  std::vector<double> values;
  std::optional<std::vector<double>> std_errors;

  std::size_t size() const noexcept { return abscissae.size(); }

  void validate() const {
    if (values.size() != abscissae.size())
      throw config_error("Curve: abscissae and values differ in length");
    if (std_errors && std_errors->size() != abscissae.size())
      throw config_error("Curve: std_errors length mismatch");
    for (std::size_t i = 1; i < abscissae.size(); ++i)
      if (!(abscissae[i] > abscissae[i - 1]))
        throw config_error("Curve: abscissae must be strictly increasing");
  }
};

inline const WedgeModel& validate_model(const WedgeModel& model) {
  auto fail = [](const std::string& msg) { throw domain_error("WedgeModel: " + msg); };
  if (model.p < 1) fail("p must be >= 1");
  if (!(model.k0 >= 0.5 && model.k0 <= 1.0)) {
    std::ostringstream os;
    os << "k0 = " << model.k0 << " out of [1/2, 1]";
    fail(os.str());
  }
  if (!(model.k1 >= 0.5 && model.k1 <= 1.0)) {
    std::ostringstream os;
    os << "k1 = " << model.k1 << " out of [1/2, 1]";
    fail(os.str());
  }
  // The flipped process (1 - k0, 1 - k1) must hit the boundary almost surely.
  if (!(model.k0 > 0.5 || model.k1 > 0.5))
    fail("k0 = k1 = 1/2: flipped process does not hit the boundary");
  return model;
}

inline const StartPoint& validate_start(const WedgeModel& model, const StartPoint& start) {
  if (!(start.rho > 0.0)) throw domain_error("StartPoint: rho must be > 0");
  if (!(start.phi > 0.0 && start.phi < model.wedge_angle())) {
    std::ostringstream os;
    os << "StartPoint: phi = " << start.phi << " not in the open wedge (0, "
       << model.wedge_angle() << ")";
    throw domain_error(os.str());
  }
  return start;
}

/// v = rho^2 / (2t), the scale on which V0 = rho^2 / (2 T0) lives.
inline double v_from_t(double rho, double t) { return rho * rho / (2.0 * t); }
inline double t_from_v(double rho, double v) { return rho * rho / (2.0 * v); }

}  // namespace dunkl

#endif  // DUNKL_MODEL_HPP
