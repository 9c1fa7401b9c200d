#pragma once

#include <stdexcept>
#include <string>

namespace cloudsig {

// Base of every error raised by the library. Each subclass maps to one
// failure mode so callers (the CLI in particular) can branch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class DerivativeUnavailable : public Error {
 public:
  using Error::Error;
};

class InvalidCloud : public Error {
 public:
  using Error::Error;
};

class DuplicatePoints : public InvalidCloud {
 public:
  using InvalidCloud::InvalidCloud;
};

class SolveFailed : public Error {
 public:
  using Error::Error;
};

class SingularPoint : public Error {
 public:
  using Error::Error;
};

class InsufficientProbes : public Error {
 public:
  using Error::Error;
};

class DimensionUnsupported : public Error {
 public:
  using Error::Error;
};

class InvalidCount : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cloudsig
