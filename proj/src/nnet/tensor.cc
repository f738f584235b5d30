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

#include "sluprobe/nnet/tensor.h"

#include "sluprobe/common/error.h"

namespace sluprobe::nnet {

std::string ShapeString(const Tensor &t) {
  return "[" + std::to_string(t.rows()) + "x" + std::to_string(t.cols()) + "]";
}

void CheckSameShape(const char *op, const Tensor &a, const Tensor &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(op) + ": " + ShapeString(a) + " vs " + ShapeString(b));
  }
}

void CheckFinite(const char *what, const Tensor &t) {
  if (!t.allFinite()) {
    throw Error(ErrorCode::kNonFiniteValue, std::string(what) + " has non-finite entries");
  }
}

Tensor UniformTensor(Eigen::Index rows, Eigen::Index cols, double limit,
                     Rng &rng) {
  std::uniform_real_distribution<double> dist(-limit, limit);
  Tensor t(rows, cols);
  for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = dist(rng);
  return t;
}

Tensor NormalTensor(Eigen::Index rows, Eigen::Index cols, double stddev,
                    Rng &rng) {
  std::normal_distribution<double> dist(0.0, stddev);
  Tensor t(rows, cols);
  for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = dist(rng);
  return t;
}

Parameter::Parameter(std::string name, Tensor value, bool is_vector)
    : name(std::move(name)), value(std::move(value)), is_vector(is_vector) {
  ZeroGrad();
}

}  // namespace sluprobe::nnet
