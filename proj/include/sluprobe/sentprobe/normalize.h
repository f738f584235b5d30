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

#ifndef SLUPROBE_SENTPROBE_NORMALIZE_H_
#define SLUPROBE_SENTPROBE_NORMALIZE_H_

#include "sluprobe/nnet/tensor.h"

namespace sluprobe::sentprobe {

// Rescales each row x of `x` to norm sqrt(d): x <- sqrt(d) / ||x|| * x.
// Throws Error{ZeroVector} for a zero row and Error{NonFiniteValue} for
// non-finite input.
nnet::Tensor L2FixNorm(const nnet::Tensor &x);

}  // namespace sluprobe::sentprobe

#endif  // SLUPROBE_SENTPROBE_NORMALIZE_H_
