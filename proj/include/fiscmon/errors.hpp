#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fiscmon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One or more parameters violate their documented bounds. Each violation is
/// listed separately so callers can report all of them at once.
class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(std::vector<std::string> violations)
      : Error(Join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string Join(const std::vector<std::string>& v) {
    std::string out = "invalid parameter: ";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) out += "; ";
      out += v[i];
    }
    return out;
  }

  std::vector<std::string> violations_;
};

class InvalidRange : public Error {
 public:
  explicit InvalidRange(const std::string& what)
      : Error("invalid range: " + what) {}
};

/// The requested simulation has no bounded solution with predetermined debt
/// under the linearized system (anything other than active-monetary /
/// passive-fiscal).
class UnsupportedRegime : public Error {
 public:
  explicit UnsupportedRegime(const std::string& what)
      : Error("unsupported regime: " + what) {}
};

class NoConvergence : public Error {
 public:
  NoConvergence(double last_iterate, double residual, long iterations)
      : Error("Riccati value iteration did not converge after " +
              std::to_string(iterations) +
              " iterations (last iterate = " + std::to_string(last_iterate) +
              ", residual = " + std::to_string(residual) + ")"),
        last_iterate_(last_iterate),
        residual_(residual),
        iterations_(iterations) {}

  double last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }
  long iterations() const { return iterations_; }

 private:
  double last_iterate_;
  double residual_;
  long iterations_;
};

/// Closed-form Riccati solution and value-iteration oracle disagree.
class CrossCheckFailure : public Error {
 public:
  explicit CrossCheckFailure(const std::string& what)
      : Error("oracle cross-check failed: " + what) {}
};

/// Initial inflation differs from the optimal anchor while inflation carries
/// a positive loss weight.
class AnchorViolation : public Error {
 public:
  explicit AnchorViolation(const std::string& what)
      : Error("anchor violation: " + what) {}
};

}  // namespace fiscmon
