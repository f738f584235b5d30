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

#ifndef SLUPROBE_METRICS_RATES_H_
#define SLUPROBE_METRICS_RATES_H_

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "sluprobe/annot/tagged.h"
#include "sluprobe/metrics/align.h"

namespace sluprobe::metrics {

enum class Metric { kChER, kWER, kCER, kCVER };

inline constexpr std::array<Metric, 4> kAllRateMetrics = {
    Metric::kChER, Metric::kWER, Metric::kCER, Metric::kCVER};

std::string_view MetricName(Metric metric);

// Summed edit counts. Rates are (S+I+D)/ref_len and are not capped at 1.
struct ErrorCounts {
  size_t substitutions = 0;
  size_t insertions = 0;
  size_t deletions = 0;
  size_t ref_len = 0;

  size_t errors() const { return substitutions + insertions + deletions; }
  // Empty reference with a non-empty hypothesis.
  bool undefined() const { return ref_len == 0 && errors() > 0; }

  ErrorCounts &operator+=(const ErrorCounts &other);
  bool operator==(const ErrorCounts &other) const = default;
};

struct ErrorRate {
  double value = 0.0;  // ratio; 1.0 == 100%
  bool undefined = false;

  double percent() const { return 100.0 * value; }
  // Throws Error{UndefinedRate} for an undefined rate.
  double Checked() const;
};

// 0 when both sides are empty; undefined (value 1.0) when only the
// reference is empty.
ErrorRate RateOf(const ErrorCounts &counts);

ErrorCounts CountsOf(const AlignmentResult &alignment);

// Tokenizations of a segment for each metric.
TokenList WordTokens(const annot::SemSegment &seg);
TokenList CharTokens(const annot::SemSegment &seg);
TokenList ConceptTokens(const annot::SemSegment &seg);
TokenList ConceptValueTokens(const annot::SemSegment &seg);
TokenList TokensFor(Metric metric, const annot::SemSegment &seg);

AlignmentResult AlignSegments(Metric metric, const annot::SemSegment &ref,
                              const annot::SemSegment &hyp);

ErrorRate Wer(const annot::SemSegment &ref, const annot::SemSegment &hyp);
ErrorRate Cher(const annot::SemSegment &ref, const annot::SemSegment &hyp);
ErrorRate Cer(const annot::SemSegment &ref, const annot::SemSegment &hyp);
ErrorRate Cver(const annot::SemSegment &ref, const annot::SemSegment &hyp);

// Corpus-level counts: summed S, I, D and ref_len per metric.
struct CorpusCounts {
  std::array<ErrorCounts, 4> by_metric{};

  ErrorCounts &operator[](Metric m) { return by_metric[static_cast<size_t>(m)]; }
  const ErrorCounts &operator[](Metric m) const {
    return by_metric[static_cast<size_t>(m)];
  }
  void Add(const annot::SemSegment &ref, const annot::SemSegment &hyp);
  ErrorRate Rate(Metric m) const { return RateOf((*this)[m]); }
};

CorpusCounts ScoreCorpus(const std::vector<annot::SemSegment> &refs,
                         const std::vector<annot::SemSegment> &hyps);

}  // namespace sluprobe::metrics

#endif  // SLUPROBE_METRICS_RATES_H_
