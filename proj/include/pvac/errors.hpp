#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pvac {

enum class ErrorCode {
  OutOfRangeGamma,
  UnsupportedOrder,
  InvalidProfile,
  OrderTooHigh,
  NegativeExponent,
  EtaSlopeOutOfBounds,
  NewtonDiverged,
  InsufficientSmoothness,
  RingNotFull,
  EmbeddingViolated,
  RunInvalid,
  RateUnstable,
  ConfigInvalid,
  InvalidArgument,
  IoFailure,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace pvac
