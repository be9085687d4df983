#pragma once

#include <stdexcept>
#include <string>

namespace dotcavity {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Physically meaningless or out-of-domain parameters.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A numerical method failed to produce a trustworthy answer.
class SolverError : public Error {
 public:
  using Error::Error;
};

// Malformed or schema-violating configuration text.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace dotcavity
