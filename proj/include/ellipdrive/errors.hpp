#pragma once

#include <stdexcept>
#include <string>

namespace ellipdrive {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Drive parameters that fail the solvability condition 4k^2(hbar w)^2 = a^2 + k^2 x^2.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(const std::string& what, double residual)
      : std::invalid_argument(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A normalizing denominator vanished.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive integration could not proceed past last_good_time().
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time_(last_good_time) {}
  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace ellipdrive
