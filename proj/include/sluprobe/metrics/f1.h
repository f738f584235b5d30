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

#ifndef SLUPROBE_METRICS_F1_H_
#define SLUPROBE_METRICS_F1_H_

#include <cstddef>
#include <vector>

#include "sluprobe/annot/concept.h"

namespace sluprobe::metrics {

struct MicroF1Counts {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;

  // Each is 0 when its denominator is 0.
  double precision() const;
  double recall() const;
  double f1() const;

  MicroF1Counts &operator+=(const MicroF1Counts &other);
};

// Pools tp/fp/fn over every (segment, label) cell. Throws
// Error{LengthMismatch} on differing list or vector lengths.
MicroF1Counts MicroF1(const std::vector<annot::MultiHot> &refs,
                      const std::vector<annot::MultiHot> &preds);

// Set projection of a concept sequence; throws Error{UnknownLabel}.
annot::MultiHot SequenceToBoc(const std::vector<annot::ConceptLabel> &labels,
                              const annot::ConceptInventory &inv);

}  // namespace sluprobe::metrics

#endif  // SLUPROBE_METRICS_F1_H_
