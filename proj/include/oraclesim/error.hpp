#pragma once

#include <stdexcept>
#include <string>

namespace oraclesim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Register names, label widths or qubit targets that do not fit a layout.
class LayoutError : public Error {
  public:
    using Error::Error;
};

/// A matrix that was required to be unitary is not (within 1e-10).
class UnitarityError : public Error {
  public:
    using Error::Error;
};

/// A superposition whose weights are all zero.
class DegenerateStateError : public Error {
  public:
    using Error::Error;
};

/// A function table that does not cover every setting label.
class IncompleteOracleError : public Error {
  public:
    using Error::Error;
};

/// Argument outside the domain of an operation (non-binary values, unknown
/// setting label, unsupported size).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Conditioning on an outcome that has zero probability.
class ImpossibleOutcomeError : public Error {
  public:
    using Error::Error;
};

/// A circuit that mixes the basis states of the register whose measurement is
/// being deferred.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// A final state whose readout register is not deterministic per setting.
class StructureError : public Error {
  public:
    using Error::Error;
};

/// A function that is neither constant nor balanced was handed to the
/// Deutsch-Jozsa driver.
class PromiseViolationError : public Error {
  public:
    using Error::Error;
};

/// Malformed textual input (function tables, state dumps).
class FormatError : public Error {
  public:
    using Error::Error;
};

} // namespace oraclesim
