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

#include "sluprobe/metrics/align.h"

#include <algorithm>

namespace sluprobe::metrics {

AlignmentResult Align(const TokenList &ref, const TokenList &hyp) {
  const size_t n = ref.size();
  const size_t m = hyp.size();
  const size_t cols = m + 1;
  std::vector<size_t> cost((n + 1) * cols);
  auto at = [&](size_t i, size_t j) -> size_t & { return cost[i * cols + j]; };
  for (size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      const size_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  AlignmentResult result;
  result.ref_len = n;
  size_t i = n;
  size_t j = m;
  while (i > 0 || j > 0) {
    const size_t here = at(i, j);
    if (i > 0 && j > 0) {
      const bool equal = ref[i - 1] == hyp[j - 1];
      if (equal && here == at(i - 1, j - 1)) {
        result.aligned_pairs.emplace_back(ref[i - 1], hyp[j - 1]);
        --i;
        --j;
        continue;
      }
      if (!equal && here == at(i - 1, j - 1) + 1) {
        result.aligned_pairs.emplace_back(ref[i - 1], hyp[j - 1]);
        ++result.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && here == at(i - 1, j) + 1) {
      result.aligned_pairs.emplace_back(ref[i - 1], std::nullopt);
      ++result.deletions;
      --i;
      continue;
    }
    result.aligned_pairs.emplace_back(std::nullopt, hyp[j - 1]);
    ++result.insertions;
    --j;
  }
  std::reverse(result.aligned_pairs.begin(), result.aligned_pairs.end());
  return result;
}

}  // namespace sluprobe::metrics
