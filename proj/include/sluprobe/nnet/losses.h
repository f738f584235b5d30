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

#ifndef SLUPROBE_NNET_LOSSES_H_
#define SLUPROBE_NNET_LOSSES_H_

#include "sluprobe/nnet/tape.h"
#include "sluprobe/nnet/tensor.h"

namespace sluprobe::nnet {

inline constexpr double kBceClamp = 1e-7;

// -mean(w .* y .* log p + (1 - y) .* log(1 - p)) over all entries, with p
// clamped to [kBceClamp, 1 - kBceClamp]. `pos_weights` is either 1 x C
// (broadcast over rows) or the shape of `pred`.
Var WeightedBce(Var pred, const Tensor &target, const Tensor &pos_weights);

// 1 - cos(a, b) for 1 x n vectors; gradient flows into `a` only. Throws
// Error{ZeroVector} if either norm is zero.
Var CosineLoss(Var a, const Tensor &b);

}  // namespace sluprobe::nnet

#endif  // SLUPROBE_NNET_LOSSES_H_
