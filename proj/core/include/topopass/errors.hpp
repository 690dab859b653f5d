#pragma once

#include <stdexcept>
#include <string>

namespace topopass {

/// Invalid configuration: bad parameter values, mismatched array sizes,
/// unknown keys. `field()` names the offending setting when known.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& message, std::string field = {})
        : std::invalid_argument(field.empty() ? message : field + ": " + message),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A quantity was requested outside the regime where it is defined,
/// e.g. edge states of a chain in the trivial phase.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Non-finite values appeared in a matrix or state.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied state or vector violates its contract (e.g. not unit norm).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two levels that must be separated are degenerate.
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace topopass
