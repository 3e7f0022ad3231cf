#ifndef AIMM_ERRORS_HPP
#define AIMM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aimm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct SymmetryViolation : Error {
  using Error::Error;
};

struct NonPositiveDefinite : Error {
  using Error::Error;
};

struct TooFewPoints : Error {
  using Error::Error;
};

struct InvalidWeight : Error {
  using Error::Error;
};

struct EmptyHistory : Error {
  using Error::Error;
};

struct EmptyMixture : Error {
  using Error::Error;
};

struct DegenerateSeries : Error {
  using Error::Error;
};

struct UnnormalizedTarget : Error {
  using Error::Error;
};

struct SingularInput : Error {
  using Error::Error;
};

struct UnsupportedDimension : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace aimm

#endif
