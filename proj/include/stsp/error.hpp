#ifndef STSP_ERROR_HPP
#define STSP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace stsp {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invariant-violating instance, model, or QUBO document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Bad argument or configuration (sizes, penalties, missing variables).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The instance admits no closed walk covering every terminal.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace stsp

#endif  // STSP_ERROR_HPP
