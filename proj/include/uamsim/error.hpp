#pragma once

#include <stdexcept>
#include <string>

namespace uamsim {

/// Base class for every error raised by the library. The CLI maps these to
/// exit code 2; InfeasibleError is the only one with its own code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad or inconsistent configuration (duplicate node codes, nonpositive
/// parameters, demand on an infeasible route, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A value outside its legal domain (coordinates, negative counts, q > capacity).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed or unreadable input file. Messages name the file and row.
class IngestionError : public Error {
public:
    using Error::Error;
};

/// Fleet estimator preconditions not met.
class SizingError : public Error {
public:
    using Error::Error;
};

/// A metric was requested on an empty population (no served riders,
/// no revenue trips).
class MetricsError : public Error {
public:
    using Error::Error;
};

}  // namespace uamsim
