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

#ifndef SLUPROBE_NNET_TAPE_H_
#define SLUPROBE_NNET_TAPE_H_

#include <functional>
#include <vector>

#include "sluprobe/nnet/tensor.h"

namespace sluprobe::nnet {

class Tape;

// Handle to a node recorded on a Tape.
class Var {
 public:
  Var() = default;
  Var(Tape *tape, int id) : tape_(tape), id_(id) {}

  Tape &tape() const { return *tape_; }
  int id() const { return id_; }
  const Tensor &value() const;
  // Gradient after Tape::Backward; zero-shaped if the node got none.
  const Tensor &grad() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }

 private:
  Tape *tape_ = nullptr;
  int id_ = -1;
};

// Single-use reverse-mode tape. Nodes are appended in evaluation order, so
// creation order is a topological order and Backward walks it in reverse.
class Tape {
 public:
  // Called with the node's own id once its gradient is complete; it must
  // push contributions to parents through AccumulateGrad.
  using BackwardFn = std::function<void(Tape &, int)>;

  Tape() { nodes_.reserve(256); }
  Tape(const Tape &) = delete;
  Tape &operator=(const Tape &) = delete;

  // Leaf without gradient tracking.
  Var Constant(Tensor value);
  // Leaf whose gradient is tracked and readable after Backward.
  Var Input(Tensor value);
  // Leaf bound to a parameter; Backward adds its gradient into p.grad.
  Var Param(Parameter &p);

  Var Record(Tensor value, const std::vector<Var> &parents, BackwardFn fn);

  // Seeds d(loss)/d(loss) = 1 for a 1x1 node and propagates.
  void Backward(Var loss);

  const Tensor &value(int id) const { return nodes_[id].value; }
  const Tensor &grad(int id) const { return nodes_[id].grad; }
  bool needs_grad(int id) const { return nodes_[id].needs_grad; }
  void AccumulateGrad(int id, const Tensor &contribution);
  template <typename Expr>
  void AccumulateGradExpr(int id, const Expr &contribution) {
    Node &node = nodes_[id];
    if (!node.needs_grad) return;
    if (!node.has_grad) {
      node.grad = contribution;
      node.has_grad = true;
    } else {
      node.grad += contribution;
    }
  }

  size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    bool has_grad = false;
    bool needs_grad = false;
    BackwardFn backward;
    Parameter *param = nullptr;
  };
  std::vector<Node> nodes_;
};

}  // namespace sluprobe::nnet

#endif  // SLUPROBE_NNET_TAPE_H_
