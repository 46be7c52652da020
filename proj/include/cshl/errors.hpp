#pragma once

#include <stdexcept>
#include <string>

namespace cshl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field contained NaN or Inf samples.
class NonFiniteField : public Error {
 public:
  using Error::Error;
};

/// A homogeneous negative-power symbol met a non-negligible zero mode while
/// the strict zero-mode policy was active.
class SingularZeroMode : public Error {
 public:
  using Error::Error;
};

class InvalidRange : public Error {
 public:
  using Error::Error;
};

/// Raised by the time stepper when a component norm grows more than tenfold
/// in a single step. Carries the simulation time at which the step started.
class StepUnstable : public Error {
 public:
  StepUnstable(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, int line, const std::string& what)
      : Error(format(field, line, what)), field_(field), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, int line, const std::string& what) {
    std::string out = "config error";
    if (line > 0) out += " (line " + std::to_string(line) + ")";
    if (!field.empty()) out += " in field \"" + field + "\"";
    return out + ": " + what;
  }

  std::string field_;
  int line_;
};

}  // namespace cshl
