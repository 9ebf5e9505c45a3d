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

#include "ikem/error.h"

namespace ikem {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeProbability: return "NegativeProbability";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::kEmptySupport: return "EmptySupport";
    case ErrorCode::kInvalidCoordinate: return "InvalidCoordinate";
    case ErrorCode::kUndefinedConditional: return "UndefinedConditional";
    case ErrorCode::kSupportMismatch: return "SupportMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kRegimeTooLarge: return "RegimeTooLarge";
    case ErrorCode::kInfeasibleKeyLength: return "InfeasibleKeyLength";
    case ErrorCode::kKeyTooShort: return "KeyTooShort";
    case ErrorCode::kBadKeyLength: return "BadKeyLength";
    case ErrorCode::kQueryBudgetExceeded: return "QueryBudgetExceeded";
    case ErrorCode::kDigestMismatch: return "DigestMismatch";
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace ikem
