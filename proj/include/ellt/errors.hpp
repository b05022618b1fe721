#pragma once

#include <stdexcept>
#include <string>

namespace ellt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

class ZeroSeries : public Error {
 public:
  ZeroSeries() : Error("series is zero to its precision") {}
};

class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

// A function has poles off the torsion classes the cache can certify.
class UnsupportedPoles : public Error {
 public:
  using Error::Error;
};

class DepthExceeded : public Error {
 public:
  using Error::Error;
};

// Window caps are below the certified bound or the evaluation did not stabilize.
class CapTooSmall : public Error {
 public:
  using Error::Error;
};

// Invalid mathematical input: singular curve, bad coordinate, malformed text.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace ellt
