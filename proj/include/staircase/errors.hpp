#pragma once

#include <stdexcept>
#include <string>

namespace staircase {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Weight/probability parameters outside their admissible range.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// Index or size outside the domain of an operation (bad box, n too small, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A cell lies outside the staircase shape, or a labelling pass left a hole.
class StructuralError : public Error {
public:
  using Error::Error;
};

/// Malformed serialized document.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Well-formed document describing a tableau that breaks the filling rules.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Exhaustive enumeration refused because n exceeds the configured cap.
class CapExceeded : public Error {
public:
  using Error::Error;
};

/// Root isolation could not certify its result.
class NumericalFailure : public Error {
public:
  using Error::Error;
};

} // namespace staircase
