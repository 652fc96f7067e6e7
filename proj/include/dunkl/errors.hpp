#ifndef DUNKL_ERRORS_HPP
#define DUNKL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dunkl {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An infinite series hit its term cap before the termination rule fired.
class nonconvergence_error : public std::runtime_error {
public:
  nonconvergence_error(const std::string& what, double partial_sum, int terms)
      : std::runtime_error(what + " (partial sum " + std::to_string(partial_sum) +
                           " after " + std::to_string(terms) + " terms)"),
        partial_sum_(partial_sum),
        terms_(terms) {}

  double partial_sum() const noexcept { return partial_sum_; }
  int terms() const noexcept { return terms_; }

private:
  double partial_sum_;
  int terms_;
};

class quadrature_error : public std::runtime_error {
public:
  quadrature_error(const std::string& what, double error_estimate)
      : std::runtime_error(what + " (error estimate " + std::to_string(error_estimate) + ")"),
        error_estimate_(error_estimate) {}

  double error_estimate() const noexcept { return error_estimate_; }

private:
  double error_estimate_;
};

class overflow_error : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

class config_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A simulated path moved more than the lifting threshold in one step.
class lifting_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace dunkl

#endif  // DUNKL_ERRORS_HPP
