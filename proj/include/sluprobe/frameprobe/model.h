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

#ifndef SLUPROBE_FRAMEPROBE_MODEL_H_
#define SLUPROBE_FRAMEPROBE_MODEL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sluprobe/dataio/archive.h"
#include "sluprobe/nnet/lstm.h"
#include "sluprobe/nnet/ops.h"
#include "sluprobe/nnet/tape.h"
#include "sluprobe/nnet/tensor.h"

namespace sluprobe::frameprobe {

// Head shape: bi-LSTM stack, fully connected stack with LeakyReLU, output
// projection and log-softmax.
struct ProbeArch {
  int bilstm_layers = 3;
  int hidden = 1024;  // per direction
  int fc_layers = 3;
  int fc_width = 1024;
  double dropout = 0.1;
  double leaky_slope = nnet::kLeakyReluSlope;

  // Throws Error{InvalidConfig}.
  void Validate() const;
  nlohmann::json ToJson() const;
  static ProbeArch FromJson(const nlohmann::json &j);
};

class FrameProbeModel {
 public:
  FrameProbeModel(int input_dim, int vocab_size, const ProbeArch &arch, uint64_t seed);

  // T x input_dim frames to T x vocab log-probabilities.
  nnet::Var Forward(nnet::Tape &tape, const nnet::Tensor &frames, bool train,
                    nnet::Rng &rng);
  // Inference without dropout.
  nnet::Tensor LogProbs(const nnet::Tensor &frames);

  std::vector<nnet::Parameter *> LstmParams();
  std::vector<nnet::Parameter *> HeadParams();
  std::vector<nnet::Parameter *> Params();
  std::vector<const nnet::Parameter *> ConstParams() const;

  void Save(const std::string &path) const;
  // Throws ShapeMismatch / ParseError when the checkpoint does not fit.
  void Load(const std::string &path);
  // Copies all parameter values from a model of identical shape.
  void CopyFrom(const FrameProbeModel &other);

  int input_dim() const { return input_dim_; }
  int vocab_size() const { return vocab_size_; }
  const ProbeArch &arch() const { return arch_; }

 private:
  int input_dim_;
  int vocab_size_;
  ProbeArch arch_;
  std::vector<nnet::BiLstmLayer> lstm_;
  std::vector<nnet::Linear> fc_;
  nnet::Linear output_;
};

// Upcasts a stored record to a T x D tensor.
nnet::Tensor ToTensor(const dataio::EmbeddingRecord &record);

}  // namespace sluprobe::frameprobe

#endif  // SLUPROBE_FRAMEPROBE_MODEL_H_
