#pragma once

#include <stdexcept>
#include <string>

namespace nckdv {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownVariableError : Error {
  using Error::Error;
};

struct NonInvertibleImageError : Error {
  using Error::Error;
};

struct NotExactDerivativeError : Error {
  using Error::Error;
};

struct UnknownEquationError : Error {
  using Error::Error;
};

struct OutsideOmegaError : Error {
  using Error::Error;
};

struct InsufficientJetOrderError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " (at offset " + std::to_string(offset) + ")"), offset(offset) {}
  std::size_t offset;
};

}  // namespace nckdv
