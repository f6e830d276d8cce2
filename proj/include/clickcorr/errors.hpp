#pragma once

#include <stdexcept>
#include <string>

namespace clickcorr {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its admissible range (state, detector, bootstrap settings).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Input data is malformed, inconsistent or empty.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A statistic has no value for the given distribution, e.g. a zero variance
/// in a denominator or a condition that never occurs.
class UndefinedStatistic : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace clickcorr
