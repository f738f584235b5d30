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

#ifndef SLUPROBE_COMMON_ERROR_H_
#define SLUPROBE_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sluprobe {

enum class ErrorCode {
  // annot
  kUnbalancedTag,
  kUnknownLabel,
  kNestedTag,
  kMalformedTag,
  kInvalidLabel,
  // metrics
  kUndefinedRate,
  kLengthMismatch,
  // nnet
  kShapeMismatch,
  kZeroVector,
  kNonFiniteValue,
  // frameprobe / training
  kOutOfVocabulary,
  kEmptyDataset,
  // dataio
  kBadMagic,
  kUnsupportedVersion,
  kTruncatedPayload,
  kInvalidSpec,
  kMissingEmbedding,
  kDuplicateId,
  kParseError,
  // harness
  kMissingLayer,
  kVocabularyIncompatible,
  kMissingFamily,
  kInvalidConfig,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// True for errors caused by bad user input (files, configs, annotations),
// as opposed to failures while running a computation.
bool IsValidationError(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sluprobe

#endif  // SLUPROBE_COMMON_ERROR_H_
