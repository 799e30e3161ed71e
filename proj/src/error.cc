// Copyright 2026 The GlossForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "glossforge/error.h"

namespace glossforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kBadHead: return "BadHead";
    case ErrorCode::kNonConsecutiveIds: return "NonConsecutiveIds";
    case ErrorCode::kRangeTokenUnsupported: return "RangeTokenUnsupported";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kUnbalancedMath: return "UnbalancedMath";
    case ErrorCode::kMissingAnnotation: return "MissingAnnotation";
    case ErrorCode::kEmptyTitle: return "EmptyTitle";
    case ErrorCode::kBadQid: return "BadQid";
    case ErrorCode::kRedirectCycle: return "RedirectCycle";
    case ErrorCode::kRedirectChainTooLong: return "RedirectChainTooLong";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kBadIndexFile: return "BadIndexFile";
    case ErrorCode::kEmptyTerm: return "EmptyTerm";
    case ErrorCode::kUnreadableFile: return "UnreadableFile";
    case ErrorCode::kDuplicateSlug: return "DuplicateSlug";
    case ErrorCode::kBadLanguageCode: return "BadLanguageCode";
    case ErrorCode::kMissingMapping: return "MissingMapping";
    case ErrorCode::kBadGraphFile: return "BadGraphFile";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool IsEnvironmentError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnreadableFile:
    case ErrorCode::kIoFailure:
    case ErrorCode::kConfigError:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      detail_(message) {}

}  // namespace glossforge
