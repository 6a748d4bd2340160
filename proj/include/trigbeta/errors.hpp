#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trigbeta {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside a function's domain (x <= 0 for log_gamma, k > n, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Gamma evaluated at a nonpositive integer, or division by an exact zero.
struct PoleError : Error {
  using Error::Error;
};

/// Exact-integer or floating-point range exceeded.
struct OverflowError : Error {
  using Error::Error;
};

/// Syntax or semantic error in integrand source text.
/// `pos` is the 0-based byte offset of the offending token.
struct ParseError : Error {
  std::size_t pos;
  ParseError(const std::string& msg, std::size_t at)
      : Error(msg + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

}  // namespace trigbeta
