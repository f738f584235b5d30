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

#ifndef SLUPROBE_NNET_OPS_H_
#define SLUPROBE_NNET_OPS_H_

#include "sluprobe/nnet/tape.h"
#include "sluprobe/nnet/tensor.h"

namespace sluprobe::nnet {

inline constexpr double kLeakyReluSlope = 0.01;

Var MatMul(Var a, Var b);
Var Add(Var a, Var b);
// x (n x m) plus a 1 x m bias broadcast over rows.
Var AddBias(Var x, Var bias);
Var Scale(Var x, double factor);
Var ConcatCols(Var a, Var b);
Var SliceCols(Var x, Eigen::Index begin, Eigen::Index count);
Var Transpose(Var x);

Var LeakyRelu(Var x, double slope = kLeakyReluSlope);
Var Relu(Var x);
Var Tanh(Var x);
Var Sigmoid(Var x);
// Row-wise.
Var Softmax(Var x);
Var LogSoftmax(Var x);

// Inverted dropout; returns `x` itself when `train` is false or p == 0.
Var Dropout(Var x, double p, bool train, Rng &rng);

// Sum over all entries of x .* weights; the projection used by gradient
// checks and as a generic scalar reduction.
Var WeightedSum(Var x, const Tensor &weights);
Var Mean(Var x);
// Sum of 1x1 nodes.
Var AddScalars(Var a, Var b);

// Fully connected layer: x * W + b with W of shape in x out.
struct Linear {
  Parameter weight;
  Parameter bias;

  Linear() = default;
  Linear(const std::string &name, Eigen::Index in, Eigen::Index out, Rng &rng);

  Var Forward(Tape &tape, Var x);
  Eigen::Index in() const { return weight.value.rows(); }
  Eigen::Index out() const { return weight.value.cols(); }
};

}  // namespace sluprobe::nnet

#endif  // SLUPROBE_NNET_OPS_H_
