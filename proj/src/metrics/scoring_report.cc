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

#include "sluprobe/metrics/scoring_report.h"

#include <cstdio>

#include "sluprobe/common/error.h"

namespace sluprobe::metrics {

ScoringReport ScoreSegments(const std::vector<std::string> &ids,
                            const std::vector<annot::SemSegment> &refs,
                            const std::vector<annot::SemSegment> &hyps,
                            const annot::ConceptInventory &inv) {
  if (ids.size() != refs.size() || refs.size() != hyps.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "ids/refs/hyps sizes " + std::to_string(ids.size()) + "/" +
                    std::to_string(refs.size()) + "/" +
                    std::to_string(hyps.size()));
  }
  ScoringReport report;
  report.num_segments = refs.size();
  std::vector<annot::MultiHot> ref_bags;
  std::vector<annot::MultiHot> hyp_bags;
  for (size_t i = 0; i < refs.size(); ++i) {
    for (Metric m : kAllRateMetrics) {
      ErrorCounts counts = CountsOf(AlignSegments(m, refs[i], hyps[i]));
      report.corpus[m] += counts;
      report.segments.push_back({ids[i], m, counts});
    }
    ref_bags.push_back(SequenceToBoc(annot::ConceptSequence(refs[i]), inv));
    hyp_bags.push_back(SequenceToBoc(annot::ConceptSequence(hyps[i]), inv));
  }
  report.f1 = MicroF1(ref_bags, hyp_bags);
  return report;
}

std::string FormatPercent(double ratio) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * ratio);
  return buf;
}

std::string ScoringCsv(const ScoringReport &report,
                       const std::vector<Metric> &metrics) {
  std::string out = "segment_id,metric,S,I,D,ref_len,rate\n";
  for (const SegmentScore &s : report.segments) {
    bool wanted = false;
    for (Metric m : metrics) wanted |= (m == s.metric);
    if (!wanted) continue;
    out += s.segment_id + "," + std::string(MetricName(s.metric)) + "," +
           std::to_string(s.counts.substitutions) + "," +
           std::to_string(s.counts.insertions) + "," +
           std::to_string(s.counts.deletions) + "," +
           std::to_string(s.counts.ref_len) + "," +
           FormatPercent(RateOf(s.counts).value) + "\n";
  }
  return out;
}

nlohmann::json ScoringSummary(const ScoringReport &report) {
  nlohmann::json j;
  j["segments"] = report.num_segments;
  nlohmann::json counts;
  for (Metric m : kAllRateMetrics) {
    const ErrorCounts &c = report.corpus[m];
    const ErrorRate rate = RateOf(c);
    j[std::string(MetricName(m))] = 100.0 * rate.value;
    counts[std::string(MetricName(m))] = {
        {"S", c.substitutions}, {"I", c.insertions}, {"D", c.deletions},
        {"ref_len", c.ref_len}, {"undefined", rate.undefined}};
  }
  j["f1"] = 100.0 * report.f1.f1();
  j["precision"] = 100.0 * report.f1.precision();
  j["recall"] = 100.0 * report.f1.recall();
  counts["f1"] = {{"tp", report.f1.tp}, {"fp", report.f1.fp}, {"fn", report.f1.fn}};
  j["counts"] = counts;
  return j;
}

}  // namespace sluprobe::metrics
