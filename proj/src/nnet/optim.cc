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

#include "sluprobe/nnet/optim.h"

#include <cmath>

#include "sluprobe/common/error.h"

namespace sluprobe::nnet {
namespace {

void CheckGrad(const Parameter &p) {
  if (p.grad.rows() != p.value.rows() || p.grad.cols() != p.value.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "gradient of '" + p.name + "' is " +
                                               ShapeString(p.grad) + ", value is " +
                                               ShapeString(p.value));
  }
}

}  // namespace

Adadelta::Adadelta(std::vector<Parameter *> params, AdadeltaConfig config)
    : params_(std::move(params)), config_(config) {
  Reset();
}

void Adadelta::Reset() {
  sq_grad_.clear();
  sq_update_.clear();
  for (Parameter *p : params_) {
    sq_grad_.push_back(Tensor::Zero(p->value.rows(), p->value.cols()));
    sq_update_.push_back(Tensor::Zero(p->value.rows(), p->value.cols()));
  }
  steps_ = 0;
}

void Adadelta::Step() {
  const double rho = config_.rho;
  const double eps = config_.epsilon;
  for (size_t i = 0; i < params_.size(); ++i) {
    Parameter &p = *params_[i];
    CheckGrad(p);
    auto g = p.grad.array();
    auto eg = sq_grad_[i].array();
    auto edx = sq_update_[i].array();
    eg = rho * eg + (1.0 - rho) * g.square();
    Tensor dx = (-((edx + eps).sqrt() / (eg + eps).sqrt()) * g).matrix();
    edx = rho * edx + (1.0 - rho) * dx.array().square();
    p.value += config_.learning_rate * dx;
  }
  ++steps_;
}

Adam::Adam(std::vector<Parameter *> params, AdamConfig config)
    : params_(std::move(params)), config_(config) {
  Reset();
}

void Adam::Reset() {
  first_.clear();
  second_.clear();
  for (Parameter *p : params_) {
    first_.push_back(Tensor::Zero(p->value.rows(), p->value.cols()));
    second_.push_back(Tensor::Zero(p->value.rows(), p->value.cols()));
  }
  steps_ = 0;
}

void Adam::Step() {
  ++steps_;
  const double b1 = config_.beta1;
  const double b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
  for (size_t i = 0; i < params_.size(); ++i) {
    Parameter &p = *params_[i];
    CheckGrad(p);
    auto g = p.grad.array();
    auto m = first_[i].array();
    auto v = second_[i].array();
    m = b1 * m + (1.0 - b1) * g;
    v = b2 * v + (1.0 - b2) * g.square();
    p.value.array() -=
        config_.learning_rate * (m / c1) / ((v / c2).sqrt() + config_.epsilon);
  }
}

void ZeroGrads(const std::vector<Parameter *> &params) {
  for (Parameter *p : params) p->ZeroGrad();
}

double ClipGradNorm(const std::vector<Parameter *> &params, double max_norm) {
  double sq = 0.0;
  for (const Parameter *p : params) sq += p->grad.squaredNorm();
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (Parameter *p : params) p->grad *= scale;
  }
  return norm;
}

}  // namespace sluprobe::nnet
