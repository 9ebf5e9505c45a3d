// Copyright 2026 The ikem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IKEM_ERROR_H_
#define IKEM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ikem {

enum class ErrorCode {
  kNegativeProbability,
  kNotNormalized,
  kDimensionMismatch,
  kProbabilityOutOfRange,
  kEmptySupport,
  kInvalidCoordinate,
  kUndefinedConditional,
  kSupportMismatch,
  kLengthMismatch,
  kRegimeTooLarge,
  kInfeasibleKeyLength,
  kKeyTooShort,
  kBadKeyLength,
  kQueryBudgetExceeded,
  kDigestMismatch,
  kMalformedInput,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library. Protocol-level decapsulation failure
// is not an error; it is reported as an empty optional.
class IkemError : public std::runtime_error {
 public:
  IkemError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw IkemError(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace ikem

#endif  // IKEM_ERROR_H_
