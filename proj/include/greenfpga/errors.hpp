#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace greenfpga {

// Base for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value outside a model's mathematical domain (rho > 1, negative mass...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Parameters that are individually valid but inconsistent (missing node...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed parameter document.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A parameter document field that violates a hard bound. `field()` is the
// dotted path, e.g. "nodes.7.yield".
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class UnknownKeyError : public ValidationError {
 public:
  explicit UnknownKeyError(std::string field)
      : ValidationError(std::move(field), "unknown key") {}
};

}  // namespace greenfpga
