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

#include "sluprobe/metrics/f1.h"

#include <string>

#include "sluprobe/common/error.h"

namespace sluprobe::metrics {

double MicroF1Counts::precision() const {
  return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double MicroF1Counts::recall() const {
  return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double MicroF1Counts::f1() const {
  const double p = precision();
  const double r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

MicroF1Counts &MicroF1Counts::operator+=(const MicroF1Counts &other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  return *this;
}

MicroF1Counts MicroF1(const std::vector<annot::MultiHot> &refs,
                      const std::vector<annot::MultiHot> &preds) {
  if (refs.size() != preds.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(refs.size()) + " references vs " +
                    std::to_string(preds.size()) + " predictions");
  }
  MicroF1Counts counts;
  for (size_t s = 0; s < refs.size(); ++s) {
    const auto &ref = refs[s].bits;
    const auto &pred = preds[s].bits;
    if (ref.size() != pred.size()) {
      throw Error(ErrorCode::kLengthMismatch,
                  "segment " + std::to_string(s) + ": vector length " +
                      std::to_string(ref.size()) + " vs " +
                      std::to_string(pred.size()));
    }
    for (size_t i = 0; i < ref.size(); ++i) {
      if (ref[i] && pred[i]) ++counts.tp;
      else if (pred[i]) ++counts.fp;
      else if (ref[i]) ++counts.fn;
    }
  }
  return counts;
}

annot::MultiHot SequenceToBoc(const std::vector<annot::ConceptLabel> &labels,
                              const annot::ConceptInventory &inv) {
  annot::MultiHot bag(inv.size());
  for (const auto &label : labels) {
    auto idx = inv.IndexOf(label);
    if (!idx) {
      throw Error(ErrorCode::kUnknownLabel,
                  "'" + label.ToString() + "' not in inventory");
    }
    bag.bits[*idx] = 1;
  }
  return bag;
}

}  // namespace sluprobe::metrics
