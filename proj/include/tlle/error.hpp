#pragma once

#include <stdexcept>
#include <string>

namespace tlle {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Grid sizes that violate the even, >= 4 requirement.
class SizingError : public Error {
public:
  using Error::Error;
};

/// Two operands live on different grids or have mismatched lengths.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// Parameters outside the domain an operation supports
/// (e.g. non-integer dispersion for revival sums).
class UnsupportedParameters : public Error {
public:
  using Error::Error;
};

/// A regression or estimator was handed data it cannot fit.
class FitError : public Error {
public:
  using Error::Error;
};

/// Degenerate input to a ratio (zero denominator and the like).
class DegenerateInput : public Error {
public:
  using Error::Error;
};

/// Malformed or unknown configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace tlle
