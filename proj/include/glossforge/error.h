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

#ifndef GLOSSFORGE_ERROR_H_
#define GLOSSFORGE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace glossforge {

// Every failure the pipeline reports is one of these. The CLI maps them onto
// exit codes with IsEnvironmentError().
enum class ErrorCode {
  // conllu
  kMalformedLine,
  kBadHead,
  kNonConsecutiveIds,
  kRangeTokenUnsupported,
  kInvariantViolation,
  // detex
  kUnbalancedMath,
  // term_extract
  kMissingAnnotation,
  // title_index
  kEmptyTitle,
  kBadQid,
  kRedirectCycle,
  kRedirectChainTooLong,
  kMalformedRow,
  kBadIndexFile,
  // linker
  kEmptyTerm,
  // corpora
  kUnreadableFile,
  kDuplicateSlug,
  kBadLanguageCode,
  // concept_graph
  kMissingMapping,
  kBadGraphFile,
  // site_emit, cli
  kIoFailure,
  kConfigError,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// True for I/O and environment failures (exit code 2), false for content and
// validation failures (exit code 1).
bool IsEnvironmentError(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message);

  ErrorCode code() const { return code_; }

  // The message without the "<CodeName>: " prefix that what() carries.
  const std::string &detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace glossforge

#endif  // GLOSSFORGE_ERROR_H_
