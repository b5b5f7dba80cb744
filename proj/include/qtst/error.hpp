#pragma once

#include <stdexcept>
#include <string>

namespace qtst {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs outside an operation's domain (nonpositive frequency, T below T0, ...).
class domain_error : public error {
 public:
  using error::error;
};

/// A required integral does not converge for the given model.
class divergence_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// The requested temperature is at or below the crossover temperature.
class below_crossover_error : public domain_error {
 public:
  below_crossover_error(const std::string& what, double T, double T0)
      : domain_error(what), temperature_(T), crossover_(T0) {}

  double temperature() const noexcept { return temperature_; }
  double crossover() const noexcept { return crossover_; }

 private:
  double temperature_;
  double crossover_;
};

/// An iterative solver failed to converge.
class convergence_error : public error {
 public:
  using error::error;
};

/// Units that cannot be converted into one another.
class incompatible_units_error : public error {
 public:
  using error::error;
};

/// Malformed input file or configuration.
class config_error : public error {
 public:
  using error::error;
};

/// Parameter estimation failed.
class fit_error : public error {
 public:
  using error::error;
};

}  // namespace qtst
