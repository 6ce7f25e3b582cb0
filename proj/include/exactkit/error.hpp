#pragma once

#include <stdexcept>
#include <string>

namespace exactkit {

/// Caller supplied malformed or incompatible arguments (dimension, modulus or
/// object mismatch).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Data is well-formed but violates a structural invariant, e.g. a non-nilpotent
/// action or a sequence that is not exact.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A bounded search or enumeration refused to run because it would exceed its guard.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace exactkit
