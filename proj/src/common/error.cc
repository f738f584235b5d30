// Copyright 2026 The sluprobe Authors.
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

#include "sluprobe/common/error.h"

namespace sluprobe {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnbalancedTag: return "UnbalancedTag";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kNestedTag: return "NestedTag";
    case ErrorCode::kMalformedTag: return "MalformedTag";
    case ErrorCode::kInvalidLabel: return "InvalidLabel";
    case ErrorCode::kUndefinedRate: return "UndefinedRate";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kOutOfVocabulary: return "OutOfVocabulary";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kTruncatedPayload: return "TruncatedPayload";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kMissingEmbedding: return "MissingEmbedding";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kMissingLayer: return "MissingLayer";
    case ErrorCode::kVocabularyIncompatible: return "VocabularyIncompatible";
    case ErrorCode::kMissingFamily: return "MissingFamily";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

bool IsValidationError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kShapeMismatch:
    case ErrorCode::kZeroVector:
    case ErrorCode::kNonFiniteValue:
    case ErrorCode::kEmptyDataset:
    case ErrorCode::kIoError:
    case ErrorCode::kUndefinedRate:
      return false;
    default:
      return true;
  }
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace sluprobe
