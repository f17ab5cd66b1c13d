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

#include "stylegap/error.hpp"

namespace stylegap {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kVersionUnsupported: return "VersionUnsupported";
    case ErrorCode::kTruncatedPayload: return "TruncatedPayload";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kZeroNormRow: return "ZeroNormRow";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kMatchedSeedViolation: return "MatchedSeedViolation";
    case ErrorCode::kReferenceCountMismatch: return "ReferenceCountMismatch";
    case ErrorCode::kDuplicateClipId: return "DuplicateClipId";
    case ErrorCode::kMissingEmbeddingFile: return "MissingEmbeddingFile";
    case ErrorCode::kTokenTooLong: return "TokenTooLong";
    case ErrorCode::kTokenTooShort: return "TokenTooShort";
    case ErrorCode::kNonLowercaseAscii: return "NonLowercaseAscii";
    case ErrorCode::kDuplicateSet: return "DuplicateSet";
    case ErrorCode::kWrongSetCount: return "WrongSetCount";
    case ErrorCode::kWrongTokenCount: return "WrongTokenCount";
    case ErrorCode::kZeroNormInput: return "ZeroNormInput";
    case ErrorCode::kEmptyReferenceSet: return "EmptyReferenceSet";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSqrtmFailure: return "SqrtmFailure";
    case ErrorCode::kZeroNormCentroid: return "ZeroNormCentroid";
    case ErrorCode::kMissingCondition: return "MissingCondition";
    case ErrorCode::kMissingCrossCondition: return "MissingCrossCondition";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchemaError: return 2;
    case ErrorCode::kMatchedSeedViolation: return 3;
    case ErrorCode::kZeroNormInput:
    case ErrorCode::kEmptyReferenceSet:
    case ErrorCode::kInsufficientSamples:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kSqrtmFailure:
    case ErrorCode::kZeroNormCentroid:
      return 4;
    case ErrorCode::kIoFailure:
    case ErrorCode::kMissingEmbeddingFile:
      return 5;
    case ErrorCode::kReferenceCountMismatch: return 6;
    case ErrorCode::kDuplicateClipId: return 7;
    case ErrorCode::kBadMagic: return 8;
    case ErrorCode::kVersionUnsupported: return 9;
    case ErrorCode::kTruncatedPayload: return 10;
    case ErrorCode::kNonFiniteValue: return 11;
    case ErrorCode::kZeroNormRow: return 12;
    case ErrorCode::kMissingCondition: return 13;
    case ErrorCode::kMissingCrossCondition: return 14;
    case ErrorCode::kInvalidSpec: return 15;
    case ErrorCode::kTokenTooLong: return 20;
    case ErrorCode::kTokenTooShort: return 21;
    case ErrorCode::kNonLowercaseAscii: return 22;
    case ErrorCode::kDuplicateSet: return 23;
    case ErrorCode::kWrongSetCount: return 24;
    case ErrorCode::kWrongTokenCount: return 25;
  }
  return 1;
}

Error Error::with_context(ErrorContext extra) const {
  ErrorContext merged = context_;
  merged.insert(merged.end(), extra.begin(), extra.end());
  return Error(code_, what(), std::move(merged));
}

}  // namespace stylegap
