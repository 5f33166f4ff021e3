#pragma once

#include <stdexcept>
#include <string>

namespace fpd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FPD_DECLARE_ERROR(Name)                   \
  class Name : public Error {                     \
   public:                                        \
    explicit Name(const std::string& what)        \
        : Error(std::string(#Name ": ") + what) {} \
  }

FPD_DECLARE_ERROR(InvalidArgument);
FPD_DECLARE_ERROR(ResourceLimit);
FPD_DECLARE_ERROR(EmptySupport);
FPD_DECLARE_ERROR(DeadEnd);
FPD_DECLARE_ERROR(BudgetExceeded);
FPD_DECLARE_ERROR(SearchBudgetExceeded);
FPD_DECLARE_ERROR(DensityTooHigh);
FPD_DECLARE_ERROR(Overflow);
FPD_DECLARE_ERROR(OddPolygon);
FPD_DECLARE_ERROR(NotEmbedded);
FPD_DECLARE_ERROR(WallNotTwoSided);
FPD_DECLARE_ERROR(ParseError);
FPD_DECLARE_ERROR(UnknownExperiment);

#undef FPD_DECLARE_ERROR

}  // namespace fpd
