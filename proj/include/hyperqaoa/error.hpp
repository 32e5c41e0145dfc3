#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperqaoa {

// Every failure raised by the library derives from Error so callers can
// catch one type at the boundary (the CLI does exactly that).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

// Raised when a request exceeds an enumeration or statevector cap.
class CapacityError : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class GenerationFailure : public Error {
public:
  GenerationFailure(const std::string &what, std::size_t attempts)
      : Error(what), attempts_(attempts) {}

  std::size_t attempts() const noexcept { return attempts_; }

private:
  std::size_t attempts_;
};

class EmptySelection : public Error {
public:
  using Error::Error;
};

} // namespace hyperqaoa
