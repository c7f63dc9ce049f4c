#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rewardroute {

// Base class for every error raised by the library. `code()` is the stable,
// machine-readable identifier used in CLI summaries and the service envelope.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define REWARDROUTE_DEFINE_ERROR(Name, Code)                   \
  class Name : public Error {                                  \
   public:                                                     \
    explicit Name(const std::string& message)                  \
        : Error(Code, message) {}                              \
  }

REWARDROUTE_DEFINE_ERROR(InvalidArgument, "InvalidArgument");
REWARDROUTE_DEFINE_ERROR(UnrecognizedPattern, "UnrecognizedPattern");
REWARDROUTE_DEFINE_ERROR(UnsupportedNotation, "UnsupportedNotation");
REWARDROUTE_DEFINE_ERROR(SpaceMismatch, "SpaceMismatch");
REWARDROUTE_DEFINE_ERROR(InvalidConstraint, "InvalidConstraint");
REWARDROUTE_DEFINE_ERROR(UnknownRoute, "UnknownRoute");
REWARDROUTE_DEFINE_ERROR(InvalidPayload, "InvalidPayload");
REWARDROUTE_DEFINE_ERROR(MissingJudge, "MissingJudge");
REWARDROUTE_DEFINE_ERROR(MalformedVerdict, "MalformedVerdict");
REWARDROUTE_DEFINE_ERROR(MalformedFilterResponse, "MalformedFilterResponse");
REWARDROUTE_DEFINE_ERROR(Timeout, "Timeout");
REWARDROUTE_DEFINE_ERROR(TransportFailure, "TransportFailure");
REWARDROUTE_DEFINE_ERROR(RateLimited, "RateLimited");
REWARDROUTE_DEFINE_ERROR(DegenerateStats, "DegenerateStats");
REWARDROUTE_DEFINE_ERROR(EmptyRollout, "EmptyRollout");
REWARDROUTE_DEFINE_ERROR(BatchRejected, "BatchRejected");

#undef REWARDROUTE_DEFINE_ERROR

}  // namespace rewardroute
