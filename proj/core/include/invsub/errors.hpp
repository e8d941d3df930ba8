#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace invsub {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Invalid arguments or a violated precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested quantity has no implementation for this model kind.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A theorem's hypothesis fails, e.g. an infinite exponential moment.
class InapplicableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A rejection loop hit its iteration cap.
class SamplerError : public std::runtime_error {
 public:
  SamplerError(const std::string& what, std::uint64_t iterations, double detail)
      : std::runtime_error(what), iterations_(iterations), detail_(detail) {}
  std::uint64_t iterations() const { return iterations_; }
  // loop-specific diagnostic: residual barrier, acceptance rate, ...
  double detail() const { return detail_; }

 private:
  std::uint64_t iterations_;
  double detail_;
};

// Step-size or grid planning cannot be met.
class PlanningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace invsub
