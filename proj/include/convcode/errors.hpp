#pragma once

#include <stdexcept>
#include <string>

namespace convcode {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter violates a documented precondition.
struct ParameterError : Error {
  using Error::Error;
};

/// A size or dimension does not match what an operation requires.
struct DimensionError : ParameterError {
  using ParameterError::ParameterError;
};

/// A required divisibility relation between parameters does not hold.
struct DivisibilityError : ParameterError {
  using ParameterError::ParameterError;
};

/// Operands belong to prime fields with different moduli.
struct FieldMismatchError : ParameterError {
  using ParameterError::ParameterError;
};

/// An evaluation point appears more than once where distinctness is required.
struct DuplicateAbscissaError : ParameterError {
  using ParameterError::ParameterError;
};

/// A bounded search (e.g. for a suitable prime) exhausted its range.
struct SearchLimitError : ParameterError {
  using ParameterError::ParameterError;
};

/// A matrix that must be invertible is singular.
struct SingularMatrixError : Error {
  using Error::Error;
};

/// Supplied symbols are not consistent with any codeword of the code.
struct InconsistentSymbolsError : Error {
  using Error::Error;
};

/// A repair group does not contain enough intact symbols.
struct InsufficientGroupError : Error {
  using Error::Error;
};

/// An exhaustive computation would exceed its enumeration budget.
struct BudgetExceededError : Error {
  using Error::Error;
};

/// Evaluation sets do not satisfy the structural layout invariants.
struct LayoutError : ParameterError {
  using ParameterError::ParameterError;
};

/// A projection or membership condition required by a construction fails.
struct ConditionViolation : Error {
  using Error::Error;
};

/// A word presented as a codeword fails the membership check.
struct NotACodewordError : Error {
  using Error::Error;
};

/// A file could not be read, written, or parsed.
struct IoError : Error {
  using Error::Error;
};

}  // namespace convcode
