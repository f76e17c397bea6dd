#include "geoassess/errors.hpp"

#include <fmt/format.h>

namespace geoassess {

ConfigError::ConfigError(std::string field, const std::string& rule)
    : Error(fmt::format("{}: {}", field, rule)), field_(std::move(field)) {}

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& what)
    : Error(fmt::format("{}:{}:{}: {}", source, line, column, what)),
      line_(line),
      column_(column) {}

}  // namespace geoassess
