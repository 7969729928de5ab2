#pragma once

#include <stdexcept>
#include <string>

namespace sgfem {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (index range, N < 2, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Operand shapes are incompatible, or an index computation would overflow.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Method configuration is invalid (divisibility, level range, power of two).
class ConfigError : public Error {
public:
    using Error::Error;
};

class DivisibilityError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Linear solver failed; the message carries the diagnostic.
class SolverError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace sgfem
