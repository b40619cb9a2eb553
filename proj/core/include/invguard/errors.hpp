#ifndef INVGUARD_ERRORS_HPP
#define INVGUARD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace invguard {

// Bad sizes, mismatched inputs, invalid arguments.
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Scheme/equation combinations that make no sense, unsupported degrees.
class ConfigurationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A caller broke a precondition that cannot be checked by type alone.
class ContractViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Corrector denominator vanished while a correction was still required.
class DegenerateCorrection : public std::runtime_error {
public:
  DegenerateCorrection(const std::string& what, double denom, double scale)
      : std::runtime_error(what), denominator(denom), threshold(scale) {}
  double denominator;
  double threshold;
};

// The discrete-time quadratic has no real root for the requested change.
class InfeasibleTarget : public std::runtime_error {
public:
  InfeasibleTarget(const std::string& what, double min_delta, double disc)
      : std::runtime_error(what), min_achievable(min_delta), discriminant(disc) {}
  double min_achievable;
  double discriminant;
};

class PositivityViolation : public std::runtime_error {
public:
  PositivityViolation(const std::string& what, std::size_t cell_index)
      : std::runtime_error(what), cell(cell_index) {}
  std::size_t cell;
};

// Even the first-order blend cannot keep the state positive at this dt.
class CflViolation : public std::runtime_error {
public:
  CflViolation(const std::string& what, std::size_t cell_index)
      : std::runtime_error(what), cell(cell_index) {}
  std::size_t cell;
};

// Roe average or characteristic decomposition is undefined at an interface.
class DegeneracyError : public std::runtime_error {
public:
  DegeneracyError(const std::string& what, std::size_t face_index)
      : std::runtime_error(what), face(face_index) {}
  std::size_t face;
};

class NumericalBlowup : public std::runtime_error {
public:
  NumericalBlowup(const std::string& what, long step_index, double time)
      : std::runtime_error(what), step(step_index), t(time) {}
  long step;
  double t;
};

} // namespace invguard

#endif
