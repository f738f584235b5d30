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

#ifndef SLUPROBE_FRAMEPROBE_VOCAB_H_
#define SLUPROBE_FRAMEPROBE_VOCAB_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sluprobe/annot/concept.h"
#include "sluprobe/annot/tagged.h"
#include "sluprobe/nnet/ctc.h"

namespace sluprobe::frameprobe {

// CTC output symbols of the probe: blank, one symbol per character, and one
// atomic open and close token per concept label ("<city>", "</city>").
class ProbeVocab {
 public:
  ProbeVocab() = default;
  // `characters` holds one code point per string; order is normalized.
  ProbeVocab(const std::set<std::string> &characters,
             const annot::ConceptInventory &inv);

  // Characters of every chunk text plus the space that joins chunks.
  static std::set<std::string> CharactersOf(const std::vector<annot::SemSegment> &segs);

  // One symbol per line, blank first. Throws Error{ParseError} on a
  // malformed file and Error{VocabularyIncompatible} when the tag tokens
  // disagree with `inv`.
  static ProbeVocab FromText(std::string_view text, const annot::ConceptInventory &inv);
  std::string ToText() const;

  const nnet::CtcVocab &ctc() const { return ctc_; }
  const annot::ConceptInventory &inventory() const { return inv_; }
  size_t size() const { return ctc_.size(); }
  const std::set<std::string> &characters() const { return characters_; }

  // Throws Error{OutOfVocabulary} naming the first missing symbol.
  std::vector<int> Encode(const annot::SemSegment &seg) const;
  // Characters in `seg` without a symbol.
  std::set<std::string> MissingCharacters(const annot::SemSegment &seg) const;

  // Tag tokens become " <L> " / " </L> "; the blank renders as nothing.
  std::string Render(const std::vector<int> &symbols) const;
  // Render followed by a lenient parse; total over all symbol strings.
  annot::ParseResult Decode(const std::vector<int> &symbols) const;

  bool operator==(const ProbeVocab &other) const { return ctc_ == other.ctc_; }

 private:
  void Init(const std::set<std::string> &characters);

  nnet::CtcVocab ctc_;
  annot::ConceptInventory inv_;
  std::set<std::string> characters_;
  std::vector<int> open_;   // label index -> symbol
  std::vector<int> close_;
};

}  // namespace sluprobe::frameprobe

#endif  // SLUPROBE_FRAMEPROBE_VOCAB_H_
