// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace algc {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation left the mathematical domain of an operation: division by
/// zero, log/sqrt of a non-positive value, or a non-finite result.
class DomainError : public Error {
  using Error::Error;
};

/// Mismatched ranks, degrees, base dimensions or parent bundles.
class DimensionError : public Error {
  using Error::Error;
};

/// A value-part matrix was singular (pivot below threshold) at a point.
class SingularMatrixError : public Error {
  using Error::Error;
};

/// Expression text failed to parse; carries the byte offset of the failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// An input document violated the fixture file schema.
class SchemaError : public Error {
  using Error::Error;
};

}  // namespace algc
