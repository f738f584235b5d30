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

#include "sluprobe/frameprobe/vocab.h"

#include "sluprobe/common/error.h"
#include "sluprobe/common/text.h"

namespace sluprobe::frameprobe {
namespace {

std::string OpenToken(const annot::ConceptLabel &l) { return "<" + l.ToString() + ">"; }
std::string CloseToken(const annot::ConceptLabel &l) { return "</" + l.ToString() + ">"; }

}  // namespace

ProbeVocab::ProbeVocab(const std::set<std::string> &characters,
                       const annot::ConceptInventory &inv)
    : inv_(inv) {
  Init(characters);
}

void ProbeVocab::Init(const std::set<std::string> &characters) {
  std::vector<std::string> symbols;
  for (const std::string &c : characters) {
    if (Utf8Characters(c).size() != 1 || c == "<" || c == ">") {
      throw Error(ErrorCode::kInvalidSpec, "bad vocabulary character '" + c + "'");
    }
    symbols.push_back(c);
  }
  characters_ = characters;
  const int first_tag = static_cast<int>(symbols.size()) + 1;
  open_.clear();
  close_.clear();
  for (size_t i = 0; i < inv_.size(); ++i) {
    open_.push_back(first_tag + 2 * static_cast<int>(i));
    close_.push_back(first_tag + 2 * static_cast<int>(i) + 1);
    symbols.push_back(OpenToken(inv_.label(i)));
    symbols.push_back(CloseToken(inv_.label(i)));
  }
  ctc_ = nnet::CtcVocab(symbols);
}

std::set<std::string> ProbeVocab::CharactersOf(const std::vector<annot::SemSegment> &segs) {
  std::set<std::string> out;
  for (const annot::SemSegment &seg : segs) {
    if (seg.chunks.size() > 1) out.insert(" ");
    for (const annot::Chunk &chunk : seg.chunks) {
      for (std::string &c : Utf8Characters(chunk.text)) out.insert(std::move(c));
    }
  }
  return out;
}

ProbeVocab ProbeVocab::FromText(std::string_view text, const annot::ConceptInventory &inv) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.emplace_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  if (lines.empty() || lines[0] != nnet::CtcVocab::kBlankSymbol) {
    throw Error(ErrorCode::kParseError, "vocabulary must start with the blank symbol");
  }
  std::set<std::string> characters;
  std::vector<std::string> tags;
  for (size_t i = 1; i < lines.size(); ++i) {
    const std::string &s = lines[i];
    if (s.size() > 2 && s.front() == '<' && s.back() == '>') {
      tags.push_back(s);
    } else if (Utf8Characters(s).size() == 1) {
      characters.insert(s);
    } else {
      throw Error(ErrorCode::kParseError,
                  "vocabulary line " + std::to_string(i + 1) + " is not a symbol");
    }
  }
  ProbeVocab vocab(characters, inv);
  const std::string expected = vocab.ToText();
  if (expected != std::string(text) && expected != std::string(text) + "\n") {
    throw Error(ErrorCode::kVocabularyIncompatible,
                "vocabulary file does not match the concept inventory");
  }
  return vocab;
}

std::string ProbeVocab::ToText() const {
  std::string out;
  for (const std::string &s : ctc_.symbols()) out += s + "\n";
  return out;
}

std::vector<int> ProbeVocab::Encode(const annot::SemSegment &seg) const {
  std::vector<int> out;
  auto put = [&](const std::string &symbol) {
    auto index = ctc_.IndexOf(symbol);
    if (!index) {
      throw Error(ErrorCode::kOutOfVocabulary, "symbol '" + symbol + "' not in the probe vocabulary");
    }
    out.push_back(*index);
  };
  for (size_t k = 0; k < seg.chunks.size(); ++k) {
    const annot::Chunk &chunk = seg.chunks[k];
    if (k > 0) put(" ");
    std::optional<size_t> label;
    if (chunk.label) {
      label = inv_.IndexOf(*chunk.label);
      if (!label) {
        throw Error(ErrorCode::kOutOfVocabulary, "label '" + chunk.label->ToString() + "' not in the probe vocabulary");
      }
      out.push_back(open_[*label]);
    }
    for (const std::string &c : Utf8Characters(chunk.text)) put(c);
    if (label) out.push_back(close_[*label]);
  }
  return out;
}

std::set<std::string> ProbeVocab::MissingCharacters(const annot::SemSegment &seg) const {
  std::set<std::string> out;
  for (const std::string &c : CharactersOf({seg})) {
    if (characters_.count(c) == 0) out.insert(c);
  }
  return out;
}

std::string ProbeVocab::Render(const std::vector<int> &symbols) const {
  std::string out;
  const int first_tag = static_cast<int>(characters_.size()) + 1;
  for (int s : symbols) {
    if (s == nnet::kBlank) continue;
    if (s >= first_tag) {
      out += " " + ctc_.symbol(s) + " ";
    } else {
      out += ctc_.symbol(s);
    }
  }
  return out;
}

annot::ParseResult ProbeVocab::Decode(const std::vector<int> &symbols) const {
  return annot::ParseTagged(Render(symbols), inv_, annot::ParseMode::kLenient);
}

}  // namespace sluprobe::frameprobe
