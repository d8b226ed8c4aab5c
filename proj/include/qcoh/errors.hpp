#pragma once

#include <stdexcept>
#include <string>

namespace qcoh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// rho00 outside [0, 1].
class TraceRange : public Error {
 public:
  using Error::Error;
};

/// |rho01|^2 exceeds rho00 * rho11 by more than the validation slack.
class NotPositive : public Error {
 public:
  using Error::Error;
};

/// A mixing weight outside [0, 1], or weights not summing to one.
class WeightRange : public Error {
 public:
  using Error::Error;
};

/// Amplitudes that do not describe a unit vector.
class NotNormalized : public Error {
 public:
  using Error::Error;
};

/// The closed form requires a continuous profile convex in |c0 c1*|.
class NonConvexMeasure : public Error {
 public:
  using Error::Error;
};

/// Columns of the ensemble-generating matrix are not orthonormal.
class NotIsometry : public Error {
 public:
  using Error::Error;
};

class MuRange : public Error {
 public:
  using Error::Error;
};

class BadOrdering : public Error {
 public:
  using Error::Error;
};

/// Unknown measure token or malformed measure parameter.
class UnknownMeasure : public Error {
 public:
  using Error::Error;
};

}  // namespace qcoh
