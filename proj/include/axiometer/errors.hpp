#pragma once

#include <stdexcept>
#include <string>

namespace axiometer {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define AXIOMETER_DEFINE_ERROR(Name)        \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  };

AXIOMETER_DEFINE_ERROR(NameError)
AXIOMETER_DEFINE_ERROR(DuplicateError)
AXIOMETER_DEFINE_ERROR(ParseError)
AXIOMETER_DEFINE_ERROR(RangeError)
AXIOMETER_DEFINE_ERROR(SizeError)
AXIOMETER_DEFINE_ERROR(SchemaError)
AXIOMETER_DEFINE_ERROR(NegativeWeightError)
AXIOMETER_DEFINE_ERROR(MonotonicityError)
AXIOMETER_DEFINE_ERROR(WeightError)
AXIOMETER_DEFINE_ERROR(AlignmentError)
AXIOMETER_DEFINE_ERROR(ArityError)

#undef AXIOMETER_DEFINE_ERROR

/// Raised when an operation that is only defined on admissible collections
/// receives one outside the polytope. Carries the offending contribution.
class InfeasibleCollectionError : public Error {
 public:
  InfeasibleCollectionError(const std::string& what, double worst_contribution)
      : Error(what), worst_contribution_(worst_contribution) {}

  double worst_contribution() const noexcept { return worst_contribution_; }

 private:
  double worst_contribution_;
};

}  // namespace axiometer
