#pragma once

#include <stdexcept>
#include <string>

namespace kstat {

// Values double as CLI exit codes and as kstat_status in the C API.
enum class ErrorCode : int {
  kVerificationFailed = 1,
  kUsage = 2,
  kCapacity = 3,
  kDimension = 4,
  kSampleSize = 5,
  kParse = 6,
  kIo = 7,
  kInternal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace kstat
