#pragma once

#include <stdexcept>
#include <string>

namespace edagepp {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define EDAGEPP_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
  public:                                                            \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

EDAGEPP_DEFINE_ERROR(DegenerateInput);
EDAGEPP_DEFINE_ERROR(SingularFit);
EDAGEPP_DEFINE_ERROR(GenerationFailed);
EDAGEPP_DEFINE_ERROR(InvalidClearance);
EDAGEPP_DEFINE_ERROR(OutOfRaster);
EDAGEPP_DEFINE_ERROR(DegenerateSubspace);
EDAGEPP_DEFINE_ERROR(TimesExceeded);
EDAGEPP_DEFINE_ERROR(DeadEnd);
EDAGEPP_DEFINE_ERROR(StepLimit);
EDAGEPP_DEFINE_ERROR(CorruptRecord);
EDAGEPP_DEFINE_ERROR(IoFailure);
EDAGEPP_DEFINE_ERROR(ConfigError);

#undef EDAGEPP_DEFINE_ERROR

}  // namespace edagepp
