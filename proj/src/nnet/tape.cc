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

#include "sluprobe/nnet/tape.h"

#include "sluprobe/common/error.h"

namespace sluprobe::nnet {

const Tensor &Var::value() const { return tape_->value(id_); }
const Tensor &Var::grad() const { return tape_->grad(id_); }

Var Tape::Constant(Tensor value) {
  Node node;
  node.value = std::move(value);
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

Var Tape::Input(Tensor value) {
  Node node;
  node.value = std::move(value);
  node.needs_grad = true;
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

Var Tape::Param(Parameter &p) {
  Node node;
  node.value = p.value;
  node.needs_grad = true;
  node.param = &p;
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

Var Tape::Record(Tensor value, const std::vector<Var> &parents, BackwardFn fn) {
  Node node;
  node.value = std::move(value);
  for (const Var &p : parents) node.needs_grad |= nodes_[p.id()].needs_grad;
  if (node.needs_grad) node.backward = std::move(fn);
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

void Tape::AccumulateGrad(int id, const Tensor &contribution) {
  AccumulateGradExpr(id, contribution);
}

void Tape::Backward(Var loss) {
  Node &root = nodes_[loss.id()];
  if (root.value.size() != 1) {
    throw Error(ErrorCode::kShapeMismatch,
                "Backward needs a scalar loss, got " + ShapeString(root.value));
  }
  if (!root.needs_grad) return;
  root.grad = Tensor::Ones(1, 1);
  root.has_grad = true;
  for (int id = loss.id(); id >= 0; --id) {
    Node &node = nodes_[id];
    if (!node.has_grad) continue;
    if (node.backward) node.backward(*this, id);
    if (node.param != nullptr) {
      Parameter &p = *node.param;
      if (p.grad.rows() != p.value.rows() || p.grad.cols() != p.value.cols()) {
        p.ZeroGrad();
      }
      p.grad += nodes_[id].grad;
    }
  }
}

}  // namespace sluprobe::nnet
