#pragma once

#include <stdexcept>
#include <string>

namespace qtheta {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input outside the mathematical domain (Im tau <= 0, |nome| >= 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A truncation rule could not fire within the configured term cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Quotient evaluated too close to a zero of its denominator.
class PoleError : public Error {
public:
    using Error::Error;
};

/// A tau rescaling would leave the integer exponent grid.
class GridError : public Error {
public:
    using Error::Error;
};

/// Arithmetic between series over different symbol tables.
class SymbolMismatch : public Error {
public:
    using Error::Error;
};

/// Expression variable absent from the evaluation environment.
class UnboundVariable : public Error {
public:
    using Error::Error;
};

/// Report serialization / file output failure.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace qtheta
