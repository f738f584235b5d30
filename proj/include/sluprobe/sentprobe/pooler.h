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

#ifndef SLUPROBE_SENTPROBE_POOLER_H_
#define SLUPROBE_SENTPROBE_POOLER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sluprobe/dataio/synth.h"
#include "sluprobe/nnet/ops.h"
#include "sluprobe/nnet/tape.h"
#include "sluprobe/nnet/tensor.h"

namespace sluprobe::sentprobe {

// Pools T x D frames into one vector: alpha = softmax_t(H w),
// v = alpha^T H, output tanh(v W + b).
class AttentivePooler {
 public:
  AttentivePooler(int frame_dim, int out_dim, uint64_t seed);

  // Pre-projection pooled vector (1 x D).
  nnet::Var Pool(nnet::Tape &tape, nnet::Var frames);
  // Projected output (1 x out_dim).
  nnet::Var Forward(nnet::Tape &tape, nnet::Var frames);

  nnet::Tensor Attention(const nnet::Tensor &frames);
  nnet::Tensor Embed(const nnet::Tensor &frames);

  std::vector<nnet::Parameter *> Params();
  std::vector<const nnet::Parameter *> ConstParams() const;
  void Save(const std::string &path) const;
  void Load(const std::string &path);

  int frame_dim() const { return frame_dim_; }
  int out_dim() const { return out_dim_; }

 private:
  nnet::Var Scores(nnet::Tape &tape, nnet::Var frames);

  int frame_dim_;
  int out_dim_;
  nnet::Parameter scorer_;
  nnet::Linear projection_;
};

struct DistillConfig {
  int max_epochs = 200;
  int patience = 20;
  int batch_size = 16;
  double learning_rate = 1e-3;  // Adam
  uint64_t seed = 1;

  void Validate() const;
  nlohmann::json ToJson() const;
  static DistillConfig FromJson(const nlohmann::json &j);
};

struct DistillEpoch {
  int epoch = 0;
  double train_loss = 0.0;
  double dev_loss = 0.0;
};

struct DistillResult {
  std::vector<DistillEpoch> log;
  int best_epoch = 0;
  double best_dev_loss = 0.0;
};

// Mean of 1 - cos(pooler(frames), target) over `pairs`.
double MeanCosineLoss(AttentivePooler &pooler, const std::vector<dataio::DistillPair> &pairs);

// Adam on the cosine loss; keeps the epoch with the lowest dev loss.
DistillResult DistillPooler(AttentivePooler &pooler, const std::vector<dataio::DistillPair> &train,
                            const std::vector<dataio::DistillPair> &dev,
                            const DistillConfig &config);

}  // namespace sluprobe::sentprobe

#endif  // SLUPROBE_SENTPROBE_POOLER_H_
