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

#include "sluprobe/nnet/losses.h"

#include <algorithm>
#include <cmath>

#include "sluprobe/common/error.h"

namespace sluprobe::nnet {

Var WeightedBce(Var pred, const Tensor &target, const Tensor &pos_weights) {
  const Tensor &p = pred.value();
  CheckSameShape("WeightedBce", p, target);
  Tensor weights;
  if (pos_weights.rows() == 1 && pos_weights.cols() == p.cols()) {
    weights = pos_weights.replicate(p.rows(), 1);
  } else {
    CheckSameShape("WeightedBce weights", p, pos_weights);
    weights = pos_weights;
  }
  const double n = static_cast<double>(p.size());
  Tensor clamped = p.cwiseMax(kBceClamp).cwiseMin(1.0 - kBceClamp);
  double total = 0.0;
  Tensor grad(p.rows(), p.cols());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double q = clamped.data()[i];
    const double y = target.data()[i];
    const double w = weights.data()[i];
    total += w * y * std::log(q) + (1.0 - y) * std::log(1.0 - q);
    // Evaluated at the clamped value so saturated outputs still train.
    grad.data()[i] = -(w * y / q - (1.0 - y) / (1.0 - q)) / n;
  }
  Tensor out(1, 1);
  out(0, 0) = -total / n;
  const int ip = pred.id();
  return pred.tape().Record(std::move(out), {pred},
                            [ip, grad = std::move(grad)](Tape &t, int self) {
                              t.AccumulateGradExpr(ip, grad * t.grad(self)(0, 0));
                            });
}

Var CosineLoss(Var a, const Tensor &b) {
  const Tensor &av = a.value();
  CheckSameShape("CosineLoss", av, b);
  const double na = av.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    throw Error(ErrorCode::kZeroVector, "CosineLoss on a zero vector");
  }
  const double dot = av.cwiseProduct(b).sum();
  Tensor out(1, 1);
  out(0, 0) = 1.0 - dot / (na * nb);
  Tensor grad = -(b / (na * nb) - av * (dot / (na * na * na * nb)));
  const int ia = a.id();
  return a.tape().Record(std::move(out), {a},
                         [ia, grad = std::move(grad)](Tape &t, int self) {
                           t.AccumulateGradExpr(ia, grad * t.grad(self)(0, 0));
                         });
}

}  // namespace sluprobe::nnet
