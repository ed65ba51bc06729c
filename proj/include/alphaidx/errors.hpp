#pragma once

#include <stdexcept>
#include <string>

namespace alphaidx {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ALPHAIDX_DEFINE_ERROR(Name)          \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

ALPHAIDX_DEFINE_ERROR(InvalidArgument);
// All member h-indexes are zero, so the Lorenz curve is undefined.
ALPHAIDX_DEFINE_ERROR(DegenerateGroup);
ALPHAIDX_DEFINE_ERROR(SampleTooLarge);
ALPHAIDX_DEFINE_ERROR(TooFewGroups);
ALPHAIDX_DEFINE_ERROR(InsufficientData);
ALPHAIDX_DEFINE_ERROR(DomainError);
ALPHAIDX_DEFINE_ERROR(OverflowError);
ALPHAIDX_DEFINE_ERROR(FitDiverged);
ALPHAIDX_DEFINE_ERROR(ZeroVariance);
ALPHAIDX_DEFINE_ERROR(SampleSizeOutOfRange);
ALPHAIDX_DEFINE_ERROR(BadBinSpec);

#undef ALPHAIDX_DEFINE_ERROR

}  // namespace alphaidx
