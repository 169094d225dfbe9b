#pragma once

#include <stdexcept>
#include <string>

namespace latkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or mathematically invalid input (bad JSON, degenerate Gram, imprimitive sublattice, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configured search or enumeration bound was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Discriminant actions of an isometry pair are incompatible with the glue map.
class GlueMismatch : public Error {
 public:
  using Error::Error;
};

/// Assembled glue extension failed to be integral. Indicates an internal defect.
class NonIntegralExtension : public Error {
 public:
  using Error::Error;
};

}  // namespace latkit
