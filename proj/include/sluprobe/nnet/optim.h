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

#ifndef SLUPROBE_NNET_OPTIM_H_
#define SLUPROBE_NNET_OPTIM_H_

#include <cstdint>
#include <vector>

#include "sluprobe/nnet/tensor.h"

namespace sluprobe::nnet {

struct AdadeltaConfig {
  double learning_rate = 1.0;
  double rho = 0.95;
  double epsilon = 1e-6;
};

// Adadelta with a learning-rate multiplier:
//   E[g^2] <- rho E[g^2] + (1 - rho) g^2
//   dx = -sqrt(E[dx^2] + eps) / sqrt(E[g^2] + eps) * g
//   E[dx^2] <- rho E[dx^2] + (1 - rho) dx^2
//   x <- x + lr * dx
class Adadelta {
 public:
  Adadelta(std::vector<Parameter *> params, AdadeltaConfig config = {});

  // Applies one update from each parameter's `grad`.
  void Step();
  void Reset();
  const AdadeltaConfig &config() const { return config_; }
  int64_t steps() const { return steps_; }

 private:
  std::vector<Parameter *> params_;
  AdadeltaConfig config_;
  std::vector<Tensor> sq_grad_;
  std::vector<Tensor> sq_update_;
  int64_t steps_ = 0;
};

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Adam with bias-corrected moments; epsilon is added outside the sqrt.
class Adam {
 public:
  Adam(std::vector<Parameter *> params, AdamConfig config = {});

  void Step();
  void Reset();
  const AdamConfig &config() const { return config_; }
  int64_t steps() const { return steps_; }

 private:
  std::vector<Parameter *> params_;
  AdamConfig config_;
  std::vector<Tensor> first_;
  std::vector<Tensor> second_;
  int64_t steps_ = 0;
};

void ZeroGrads(const std::vector<Parameter *> &params);

// Scales all gradients so their joint L2 norm is at most `max_norm`.
// Returns the norm before scaling. max_norm <= 0 disables clipping.
double ClipGradNorm(const std::vector<Parameter *> &params, double max_norm);

}  // namespace sluprobe::nnet

#endif  // SLUPROBE_NNET_OPTIM_H_
