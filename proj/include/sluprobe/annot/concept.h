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

#ifndef SLUPROBE_ANNOT_CONCEPT_H_
#define SLUPROBE_ANNOT_CONCEPT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sluprobe::annot {

// A semantic concept: an attribute optionally specialized by a specifier.
// The canonical form is "attribute" or "attribute-specifier".
class ConceptLabel {
 public:
  ConceptLabel() = default;
  explicit ConceptLabel(std::string attribute,
                        std::optional<std::string> specifier = std::nullopt);

  // Parses a canonical label. Attributes themselves may contain '-' (e.g.
  // "room-number"), so the trailing component is treated as a specifier only
  // when it appears in `specifiers`.
  static ConceptLabel Parse(std::string_view canonical,
                            const std::set<std::string> &specifiers = {});

  static bool IsValidToken(std::string_view token);

  const std::string &attribute() const { return attribute_; }
  const std::optional<std::string> &specifier() const { return specifier_; }
  std::string ToString() const;

  friend bool operator==(const ConceptLabel &a, const ConceptLabel &b) {
    return a.ToString() == b.ToString();
  }
  friend bool operator<(const ConceptLabel &a, const ConceptLabel &b) {
    return a.ToString() < b.ToString();
  }

 private:
  std::string attribute_;
  std::optional<std::string> specifier_;
};

// Fixed-length binary vector over an inventory.
struct MultiHot {
  std::vector<uint8_t> bits;

  MultiHot() = default;
  explicit MultiHot(size_t size) : bits(size, 0) {}

  size_t size() const { return bits.size(); }
  size_t Popcount() const;
  bool operator==(const MultiHot &other) const = default;
};

// Ordered closed set of labels with a bijective index.
class ConceptInventory {
 public:
  ConceptInventory() = default;
  explicit ConceptInventory(const std::vector<ConceptLabel> &labels);

  // Text format: one canonical label per line; '#' starts a comment. A
  // comment of the form "# specifiers: a b c" declares specifier suffixes.
  static ConceptInventory FromText(std::string_view text);
  static ConceptInventory Load(const std::string &path);
  std::string ToText() const;

  size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::vector<ConceptLabel> &labels() const { return labels_; }
  const ConceptLabel &label(size_t i) const { return labels_.at(i); }
  const std::set<std::string> &specifiers() const { return specifiers_; }

  std::optional<size_t> IndexOf(std::string_view canonical) const;
  std::optional<size_t> IndexOf(const ConceptLabel &label) const;
  bool Contains(std::string_view canonical) const {
    return IndexOf(canonical).has_value();
  }

  bool operator==(const ConceptInventory &other) const {
    return labels_ == other.labels_;
  }

 private:
  std::vector<ConceptLabel> labels_;
  std::unordered_map<std::string, size_t> index_;
  std::set<std::string> specifiers_;
};

}  // namespace sluprobe::annot

#endif  // SLUPROBE_ANNOT_CONCEPT_H_
