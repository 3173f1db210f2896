#pragma once

#include <stdexcept>
#include <string>

namespace gsvi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (t <= 0, w < 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A derivative was requested exactly at a declared knot without choosing a side.
class KnotError : public Error {
public:
    using Error::Error;
};

/// Family parameter outside its admissible range.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A no-arbitrage requirement failed where the operation needs it to hold.
class ArbitrageError : public Error {
public:
    using Error::Error;
};

/// Density mass did not converge on the integration domain.
class TailError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class GridError : public Error {
public:
    using Error::Error;
};

/// Malformed or unknown surface configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace gsvi
