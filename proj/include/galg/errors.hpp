#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace galg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input text rejected; line/col are 1-based, 0 when not tied to a location.
struct ParseError : Error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_ = 0, int col_ = 0)
      : Error(line_ > 0 ? "line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + msg
                        : msg),
        line(line_), col(col_) {}
};

struct FieldMismatchError : Error {
  using Error::Error;
};

// Operation not defined for the presentation's flavor.
struct FlavorError : Error {
  using Error::Error;
};

struct DegreeCapError : Error {
  using Error::Error;
};

// Raised when an operation requires a certified presentation and the
// overlap check found distinct normal forms.
struct ConfluenceError : Error {
  using Error::Error;
};

struct NakayamaCertError : Error {
  using Error::Error;
};

struct ModuleCertError : Error {
  std::vector<std::string> violations;
  ModuleCertError(const std::string& msg, std::vector<std::string> v = {})
      : Error(msg), violations(std::move(v)) {}
};

}  // namespace galg
