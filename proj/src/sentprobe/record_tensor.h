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

#ifndef SLUPROBE_SENTPROBE_RECORD_TENSOR_H_
#define SLUPROBE_SENTPROBE_RECORD_TENSOR_H_

#include "sluprobe/dataio/archive.h"
#include "sluprobe/nnet/tensor.h"

namespace sluprobe::sentprobe::internal {

inline nnet::Tensor RecordTensor(const dataio::EmbeddingRecord &rec) {
  nnet::Tensor t(rec.frames, rec.dim);
  for (uint32_t i = 0; i < rec.frames; ++i) {
    for (uint32_t j = 0; j < rec.dim; ++j) t(i, j) = rec.at(i, j);
  }
  return t;
}

}  // namespace sluprobe::sentprobe::internal

#endif  // SLUPROBE_SENTPROBE_RECORD_TENSOR_H_
