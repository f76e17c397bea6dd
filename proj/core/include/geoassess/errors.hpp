#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace geoassess {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configuration value is missing or violates an invariant. `field()` is the
/// dotted path of the offending key, e.g. `plant.capacity_factor`.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& rule);

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A document could not be parsed at all.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column,
             const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A financial metric has no value for the given inputs (no energy, no tariff).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

/// Net inflow never recovers the investment.
class NoPaybackError : public UndefinedMetricError {
 public:
  using UndefinedMetricError::UndefinedMetricError;
};

/// Non-fatal findings collected during validation (out-of-band parameters).
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
  bool empty() const noexcept { return warnings.empty(); }
};

}  // namespace geoassess
