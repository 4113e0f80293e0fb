#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace recurlab {

// Argument outside the unit interval, or a map parameter outside its range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A construction parameter (counterexample stages, grids, ...) is unusable.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Configuration problem; `key()` names the offending config key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// The working precision can no longer resolve the orbit: one map step left a
// positive state unchanged (the increment a*x^z was lost), or collapsed it onto
// the fixed point at 0.
class StagnationError : public std::runtime_error {
 public:
  StagnationError(double x, std::uint64_t step, unsigned precision_bits)
      : std::runtime_error("orbit stagnated at x=" + std::to_string(x) + " (step " +
                           std::to_string(step) + ", " + std::to_string(precision_bits) +
                           " mantissa bits)"),
        x_(x),
        step_(step),
        bits_(precision_bits) {}

  double x() const noexcept { return x_; }
  std::uint64_t step() const noexcept { return step_; }
  unsigned precision_bits() const noexcept { return bits_; }

 private:
  double x_;
  std::uint64_t step_;
  unsigned bits_;
};

class UndefinedRatio : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Base for every "not enough data to estimate" condition.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientReturns : public InsufficientData {
 public:
  using InsufficientData::InsufficientData;
};

class InsufficientSamples : public InsufficientData {
 public:
  using InsufficientData::InsufficientData;
};

class DegenerateTail : public InsufficientData {
 public:
  using InsufficientData::InsufficientData;
};

class InsufficientOccurrences : public InsufficientData {
 public:
  using InsufficientData::InsufficientData;
};

}  // namespace recurlab
