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

#ifndef SLUPROBE_METRICS_SCORING_REPORT_H_
#define SLUPROBE_METRICS_SCORING_REPORT_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "sluprobe/annot/concept.h"
#include "sluprobe/annot/tagged.h"
#include "sluprobe/metrics/f1.h"
#include "sluprobe/metrics/rates.h"

namespace sluprobe::metrics {

struct SegmentScore {
  std::string segment_id;
  Metric metric;
  ErrorCounts counts;
};

struct ScoringReport {
  std::vector<SegmentScore> segments;
  CorpusCounts corpus;
  MicroF1Counts f1;
  size_t num_segments = 0;
};

// Scores paired segments with every rate metric and bag-of-concepts F1.
ScoringReport ScoreSegments(const std::vector<std::string> &ids,
                            const std::vector<annot::SemSegment> &refs,
                            const std::vector<annot::SemSegment> &hyps,
                            const annot::ConceptInventory &inv);

// Two-decimal percent, as in the result tables ("25.00").
std::string FormatPercent(double ratio);

// CSV columns: segment_id,metric,S,I,D,ref_len,rate. Only `metrics` rows
// are written.
std::string ScoringCsv(const ScoringReport &report,
                       const std::vector<Metric> &metrics);

// {"segments": N, "cher": .., "wer": .., "cer": .., "cver": .., "f1": ..}
// with rates in percent; per-metric counts under "counts".
nlohmann::json ScoringSummary(const ScoringReport &report);

}  // namespace sluprobe::metrics

#endif  // SLUPROBE_METRICS_SCORING_REPORT_H_
