// Copyright 2026 The stylegap Authors.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stylegap {

enum class ErrorCode {
  // Embedding container.
  kBadMagic,
  kVersionUnsupported,
  kTruncatedPayload,
  kNonFiniteValue,
  kZeroNormRow,
  kIoFailure,
  // Manifest.
  kSchemaError,
  kMatchedSeedViolation,
  kReferenceCountMismatch,
  kDuplicateClipId,
  kMissingEmbeddingFile,
  // Descriptor bundles.
  kTokenTooLong,
  kTokenTooShort,
  kNonLowercaseAscii,
  kDuplicateSet,
  kWrongSetCount,
  kWrongTokenCount,
  // Metrics.
  kZeroNormInput,
  kEmptyReferenceSet,
  kInsufficientSamples,
  kDimensionMismatch,
  kSqrtmFailure,
  kZeroNormCentroid,
  // Protocol and fixtures.
  kMissingCondition,
  kMissingCrossCondition,
  kInvalidSpec,
};

/// Stable identifier used in diagnostics, e.g. "MatchedSeedViolation".
std::string_view error_name(ErrorCode code);

/// Process exit status for a failure with this code. 2 schema, 3 matched
/// seeds, 4 numeric, 5 I/O; the remaining codes get distinct values >= 6.
int exit_code(ErrorCode code);

/// Key/value pairs naming the offending record (artist, seed, clip_id, ...).
using ErrorContext = std::vector<std::pair<std::string, std::string>>;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, ErrorContext context = {})
      : std::runtime_error(message), code_(code), context_(std::move(context)) {}

  ErrorCode code() const noexcept { return code_; }
  const ErrorContext& context() const noexcept { return context_; }

  /// Copy of this error with extra context appended.
  Error with_context(ErrorContext extra) const;

 private:
  ErrorCode code_;
  ErrorContext context_;
};

}  // namespace stylegap
