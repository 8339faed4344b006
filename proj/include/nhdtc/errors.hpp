#pragma once

#include <stdexcept>
#include <string>

namespace nhdtc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define NHDTC_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

NHDTC_DEFINE_ERROR(InvalidConfig);
NHDTC_DEFINE_ERROR(IndexError);
NHDTC_DEFINE_ERROR(DimensionError);
NHDTC_DEFINE_ERROR(ResourceError);
NHDTC_DEFINE_ERROR(InvalidParam);
// Norm of the evolved state collapsed to zero.
NHDTC_DEFINE_ERROR(DegenerateEvolution);
// Eigenbasis too ill-conditioned; parameters are close to an exceptional point.
NHDTC_DEFINE_ERROR(NearDefective);
NHDTC_DEFINE_ERROR(WeakPairing);
NHDTC_DEFINE_ERROR(InsufficientData);
NHDTC_DEFINE_ERROR(NoTransitionDetected);
NHDTC_DEFINE_ERROR(IoError);
NHDTC_DEFINE_ERROR(UsageError);

#undef NHDTC_DEFINE_ERROR

}  // namespace nhdtc
