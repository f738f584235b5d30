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

#ifndef SLUPROBE_ANNOT_TAGGED_H_
#define SLUPROBE_ANNOT_TAGGED_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sluprobe/annot/concept.h"

namespace sluprobe::annot {

// One span of an utterance; labeled chunks are concept values.
struct Chunk {
  std::string text;
  std::optional<ConceptLabel> label;

  bool operator==(const Chunk &other) const = default;
};

// A parsed utterance. Chunk texts are whitespace-normalized, unlabeled
// chunks are never empty and never adjacent to another unlabeled chunk.
struct SemSegment {
  std::vector<Chunk> chunks;

  bool empty() const { return chunks.empty(); }
  bool operator==(const SemSegment &other) const = default;

  // Appends a chunk, normalizing its text and keeping the invariants.
  void Append(std::string_view text,
              std::optional<ConceptLabel> label = std::nullopt);
};

struct ConceptValuePair {
  ConceptLabel label;
  std::string value;

  bool operator==(const ConceptValuePair &other) const = default;
};

// Trim, collapse internal whitespace, lowercase.
std::string NormalizeValue(std::string_view value);

enum class ParseMode { kStrict, kLenient };

struct ParseDiagnostic {
  enum class Kind {
    kUnclosedTag,     // R1: open tag closed implicitly at next tag / end
    kUnmatchedClose,  // R2: close tag without open, dropped
    kNestedTag,       // R3: open inside open closes the enclosing tag
    kUnknownLabel,    // tag label outside the inventory, tag dropped
    kMalformedTag,    // "<...>" that is not a valid tag, dropped
    kStrayBracket,    // lone '<' or '>', dropped
  };
  Kind kind;
  size_t offset;  // byte offset into the raw string
  std::string detail;
};

std::string_view DiagnosticKindName(ParseDiagnostic::Kind kind);

struct ParseResult {
  SemSegment segment;
  std::vector<ParseDiagnostic> diagnostics;
};

// Parses "<label> value </label>" inline annotations. Strict mode throws
// Error{UnbalancedTag, UnknownLabel, NestedTag, MalformedTag}; lenient mode
// repairs and never throws.
ParseResult ParseTagged(std::string_view raw, const ConceptInventory &inv,
                        ParseMode mode);

// Convenience for strict parsing.
SemSegment ParseStrict(std::string_view raw, const ConceptInventory &inv);

// Canonical rendering with single spaces around tags.
std::string RenderTagged(const SemSegment &seg);

// Chunk texts joined by single spaces, without tags.
std::string UntaggedText(const SemSegment &seg);

std::vector<ConceptLabel> ConceptSequence(const SemSegment &seg);

std::vector<ConceptValuePair> ConceptValuePairs(const SemSegment &seg);

// Throws Error{UnknownLabel} when a label is not in `inv`.
MultiHot BagOfConcepts(const SemSegment &seg, const ConceptInventory &inv);

}  // namespace sluprobe::annot

#endif  // SLUPROBE_ANNOT_TAGGED_H_
