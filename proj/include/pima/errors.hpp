#pragma once

#include <stdexcept>
#include <string>

namespace pima {

/// Malformed input text (event logs, alignment matrices). Messages name the
/// offending file location where one is known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Inconsistent run configuration (flag values, parameter ranges).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A structural invariant of an alignment does not hold (e.g. a column
/// mixing two activity labels, or a dynamic-programming score identity
/// failing). These indicate corrupt input or an internal defect.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace pima
