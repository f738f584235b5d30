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

// Brute-force edit distance used as a test oracle.

#ifndef SLUPROBE_TESTS_TESTING_EDIT_ORACLE_H_
#define SLUPROBE_TESTS_TESTING_EDIT_ORACLE_H_

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace sluprobe::testing {

// Plain recursive edit distance, exponential time. Only for short lists.
inline size_t BruteEditDistance(const std::vector<std::string> &a, size_t i,
                                const std::vector<std::string> &b, size_t j) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  const size_t sub = BruteEditDistance(a, i + 1, b, j + 1) + (a[i] == b[j] ? 0 : 1);
  const size_t del = BruteEditDistance(a, i + 1, b, j) + 1;
  const size_t ins = BruteEditDistance(a, i, b, j + 1) + 1;
  return std::min({sub, del, ins});
}

inline size_t BruteEditDistance(const std::vector<std::string> &a,
                                const std::vector<std::string> &b) {
  return BruteEditDistance(a, 0, b, 0);
}

}  // namespace sluprobe::testing

#endif  // SLUPROBE_TESTS_TESTING_EDIT_ORACLE_H_
