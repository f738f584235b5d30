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

#ifndef SLUPROBE_NNET_TENSOR_H_
#define SLUPROBE_NNET_TENSOR_H_

#include <random>
#include <string>

#include <Eigen/Dense>

namespace sluprobe::nnet {

// Dense row-major matrix. Vectors are 1 x n rows.
using Tensor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVector = Eigen::Matrix<double, 1, Eigen::Dynamic>;

using Rng = std::mt19937_64;

std::string ShapeString(const Tensor &t);

// Throws Error{ShapeMismatch} naming `op` and both shapes.
void CheckSameShape(const char *op, const Tensor &a, const Tensor &b);

// Throws Error{NonFiniteValue} if any entry is NaN or infinite.
void CheckFinite(const char *what, const Tensor &t);

Tensor UniformTensor(Eigen::Index rows, Eigen::Index cols, double limit,
                     Rng &rng);
Tensor NormalTensor(Eigen::Index rows, Eigen::Index cols, double stddev,
                    Rng &rng);

// A trainable tensor with its accumulated gradient. Rank-1 parameters
// (biases) are stored as 1 x n rows and serialized with rank 1.
struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;
  bool is_vector = false;

  Parameter() = default;
  Parameter(std::string name, Tensor value, bool is_vector = false);

  void ZeroGrad() { grad.setZero(value.rows(), value.cols()); }
};

}  // namespace sluprobe::nnet

#endif  // SLUPROBE_NNET_TENSOR_H_
