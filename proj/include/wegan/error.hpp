#pragma once

#include <stdexcept>
#include <string>

namespace wegan {

// Base of every error raised by the library. Each subclass names one
// failure category so callers (and the experiment harness) can tell a bad
// configuration apart from a run that blew up numerically.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid hyperparameter or configuration value.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Mismatched dimensions between a network and its input.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// NaN or infinity produced or consumed by a computation.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Caller broke an operation precondition (e.g. probability of exactly 1).
class ContractError : public Error {
public:
    using Error::Error;
};

/// Importance weights became infinite or degenerate.
class DivergentWeightError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace wegan
