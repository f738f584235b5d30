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

#include "sluprobe/sentprobe/normalize.h"

#include <cmath>

#include "sluprobe/common/error.h"

namespace sluprobe::sentprobe {

nnet::Tensor L2FixNorm(const nnet::Tensor &x) {
  nnet::CheckFinite("L2FixNorm", x);
  const double target = std::sqrt(static_cast<double>(x.cols()));
  nnet::Tensor out(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double norm = x.row(r).norm();
    if (norm == 0.0) {
      throw Error(ErrorCode::kZeroVector, "cannot normalize a zero embedding (row " + std::to_string(r) + ")");
    }
    out.row(r) = x.row(r) * (target / norm);
  }
  return out;
}

}  // namespace sluprobe::sentprobe
