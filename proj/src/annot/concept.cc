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

#include "sluprobe/annot/concept.h"

#include <algorithm>

#include "sluprobe/common/error.h"
#include "sluprobe/common/text.h"

namespace sluprobe::annot {

bool ConceptLabel::IsValidToken(std::string_view token) {
  if (token.empty()) return false;
  return std::none_of(token.begin(), token.end(), [](char c) {
    return IsAsciiSpace(c) || c == '<' || c == '>' || c == '/';
  });
}

ConceptLabel::ConceptLabel(std::string attribute,
                           std::optional<std::string> specifier)
    : attribute_(std::move(attribute)), specifier_(std::move(specifier)) {
  if (!IsValidToken(attribute_)) {
    throw Error(ErrorCode::kInvalidLabel, "bad attribute '" + attribute_ + "'");
  }
  if (specifier_ && !IsValidToken(*specifier_)) {
    throw Error(ErrorCode::kInvalidLabel, "bad specifier '" + *specifier_ + "'");
  }
}

ConceptLabel ConceptLabel::Parse(std::string_view canonical,
                                 const std::set<std::string> &specifiers) {
  const size_t dash = canonical.rfind('-');
  if (dash != std::string_view::npos && dash > 0 &&
      dash + 1 < canonical.size()) {
    std::string suffix(canonical.substr(dash + 1));
    if (specifiers.count(suffix)) {
      return ConceptLabel(std::string(canonical.substr(0, dash)), suffix);
    }
  }
  return ConceptLabel(std::string(canonical));
}

std::string ConceptLabel::ToString() const {
  if (!specifier_) return attribute_;
  return attribute_ + "-" + *specifier_;
}

size_t MultiHot::Popcount() const {
  return static_cast<size_t>(std::count(bits.begin(), bits.end(), 1));
}

ConceptInventory::ConceptInventory(const std::vector<ConceptLabel> &labels) {
  for (const auto &label : labels) {
    std::string key = label.ToString();
    if (index_.count(key)) {
      throw Error(ErrorCode::kDuplicateId, "duplicate concept '" + key + "'");
    }
    index_.emplace(key, labels_.size());
    labels_.push_back(label);
    if (label.specifier()) specifiers_.insert(*label.specifier());
  }
}

ConceptInventory ConceptInventory::FromText(std::string_view text) {
  std::vector<std::string> lines;
  std::set<std::string> specifiers;
  size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line = NormalizeSpaces(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      constexpr std::string_view kDirective = "specifiers:";
      std::string body = NormalizeSpaces(line.substr(1));
      if (body.rfind(kDirective, 0) == 0) {
        for (auto &s : SplitWhitespace(body.substr(kDirective.size()))) {
          specifiers.insert(s);
        }
      }
      continue;
    }
    if (!ConceptLabel::IsValidToken(line)) {
      throw Error(ErrorCode::kParseError, "inventory line " +
                                              std::to_string(line_no) +
                                              ": invalid label '" + line + "'");
    }
    lines.push_back(line);
  }
  std::vector<ConceptLabel> labels;
  labels.reserve(lines.size());
  for (const auto &line : lines) {
    labels.push_back(ConceptLabel::Parse(line, specifiers));
  }
  ConceptInventory inv(labels);
  inv.specifiers_.insert(specifiers.begin(), specifiers.end());
  return inv;
}

ConceptInventory ConceptInventory::Load(const std::string &path) {
  return FromText(ReadFileOrThrow(path));
}

std::string ConceptInventory::ToText() const {
  std::string out;
  if (!specifiers_.empty()) {
    out += "# specifiers:";
    for (const auto &s : specifiers_) out += " " + s;
    out += "\n";
  }
  for (const auto &label : labels_) out += label.ToString() + "\n";
  return out;
}

std::optional<size_t> ConceptInventory::IndexOf(
    std::string_view canonical) const {
  auto it = index_.find(std::string(canonical));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<size_t> ConceptInventory::IndexOf(
    const ConceptLabel &label) const {
  return IndexOf(label.ToString());
}

}  // namespace sluprobe::annot
