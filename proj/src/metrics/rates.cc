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

#include "sluprobe/metrics/rates.h"

#include "sluprobe/common/error.h"
#include "sluprobe/common/text.h"

namespace sluprobe::metrics {

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kChER: return "cher";
    case Metric::kWER: return "wer";
    case Metric::kCER: return "cer";
    case Metric::kCVER: return "cver";
  }
  return "unknown";
}

ErrorCounts &ErrorCounts::operator+=(const ErrorCounts &other) {
  substitutions += other.substitutions;
  insertions += other.insertions;
  deletions += other.deletions;
  ref_len += other.ref_len;
  return *this;
}

double ErrorRate::Checked() const {
  if (undefined) {
    throw Error(ErrorCode::kUndefinedRate,
                "reference is empty but hypothesis is not");
  }
  return value;
}

ErrorRate RateOf(const ErrorCounts &counts) {
  if (counts.ref_len == 0) {
    return counts.errors() == 0 ? ErrorRate{0.0, false}
                                : ErrorRate{1.0, true};
  }
  return {static_cast<double>(counts.errors()) /
              static_cast<double>(counts.ref_len),
          false};
}

ErrorCounts CountsOf(const AlignmentResult &alignment) {
  return {alignment.substitutions, alignment.insertions, alignment.deletions,
          alignment.ref_len};
}

TokenList WordTokens(const annot::SemSegment &seg) {
  return SplitWhitespace(annot::UntaggedText(seg));
}

TokenList CharTokens(const annot::SemSegment &seg) {
  // UntaggedText is already trimmed with single inner spaces.
  return Utf8Characters(annot::UntaggedText(seg));
}

TokenList ConceptTokens(const annot::SemSegment &seg) {
  TokenList tokens;
  for (const auto &label : annot::ConceptSequence(seg)) {
    tokens.push_back(label.ToString());
  }
  return tokens;
}

TokenList ConceptValueTokens(const annot::SemSegment &seg) {
  TokenList tokens;
  for (const auto &pair : annot::ConceptValuePairs(seg)) {
    // Labels cannot contain '\n', so the join is unambiguous.
    tokens.push_back(pair.label.ToString() + "\n" + pair.value);
  }
  return tokens;
}

TokenList TokensFor(Metric metric, const annot::SemSegment &seg) {
  switch (metric) {
    case Metric::kChER: return CharTokens(seg);
    case Metric::kWER: return WordTokens(seg);
    case Metric::kCER: return ConceptTokens(seg);
    case Metric::kCVER: return ConceptValueTokens(seg);
  }
  return {};
}

AlignmentResult AlignSegments(Metric metric, const annot::SemSegment &ref,
                              const annot::SemSegment &hyp) {
  return Align(TokensFor(metric, ref), TokensFor(metric, hyp));
}

ErrorRate Wer(const annot::SemSegment &ref, const annot::SemSegment &hyp) {
  return RateOf(CountsOf(AlignSegments(Metric::kWER, ref, hyp)));
}

ErrorRate Cher(const annot::SemSegment &ref, const annot::SemSegment &hyp) {
  return RateOf(CountsOf(AlignSegments(Metric::kChER, ref, hyp)));
}

ErrorRate Cer(const annot::SemSegment &ref, const annot::SemSegment &hyp) {
  return RateOf(CountsOf(AlignSegments(Metric::kCER, ref, hyp)));
}

ErrorRate Cver(const annot::SemSegment &ref, const annot::SemSegment &hyp) {
  return RateOf(CountsOf(AlignSegments(Metric::kCVER, ref, hyp)));
}

void CorpusCounts::Add(const annot::SemSegment &ref,
                       const annot::SemSegment &hyp) {
  for (Metric m : kAllRateMetrics) {
    (*this)[m] += CountsOf(AlignSegments(m, ref, hyp));
  }
}

CorpusCounts ScoreCorpus(const std::vector<annot::SemSegment> &refs,
                         const std::vector<annot::SemSegment> &hyps) {
  if (refs.size() != hyps.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(refs.size()) + " references vs " +
                    std::to_string(hyps.size()) + " hypotheses");
  }
  CorpusCounts counts;
  for (size_t i = 0; i < refs.size(); ++i) counts.Add(refs[i], hyps[i]);
  return counts;
}

}  // namespace sluprobe::metrics
