#ifndef LEVSIM_ERRORS_HPP
#define LEVSIM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace levsim {

// Bad physical or numerical input (negative power, kd0 <= 0, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A state became NaN/inf during integration.
class IntegratorBlowup : public std::runtime_error {
 public:
  IntegratorBlowup(double time, const std::string& what)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

// One or more trajectories of an ensemble failed.
class EnsembleError : public std::runtime_error {
 public:
  struct Failure {
    std::size_t index;
    double time;
    std::string message;
  };

  explicit EnsembleError(std::vector<Failure> failures);
  const std::vector<Failure>& failures() const { return failures_; }

 private:
  std::vector<Failure> failures_;
};

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Closed-form density or moment not available for the requested parameters.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace levsim

#endif  // LEVSIM_ERRORS_HPP
