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

#ifndef SLUPROBE_METRICS_ALIGN_H_
#define SLUPROBE_METRICS_ALIGN_H_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sluprobe::metrics {

using TokenList = std::vector<std::string>;

struct AlignmentResult {
  size_t substitutions = 0;
  size_t insertions = 0;
  size_t deletions = 0;
  size_t ref_len = 0;
  // (ref token | gap, hyp token | gap), in sequence order.
  std::vector<std::pair<std::optional<std::string>, std::optional<std::string>>>
      aligned_pairs;

  size_t cost() const { return substitutions + insertions + deletions; }
};

// Minimal unit-cost Levenshtein alignment. Ties are broken in the order
// match, substitution, deletion, insertion while tracing back.
AlignmentResult Align(const TokenList &ref, const TokenList &hyp);

}  // namespace sluprobe::metrics

#endif  // SLUPROBE_METRICS_ALIGN_H_
