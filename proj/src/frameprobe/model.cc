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

#include "sluprobe/frameprobe/model.h"

#include "sluprobe/common/error.h"
#include "sluprobe/nnet/checkpoint.h"

namespace sluprobe::frameprobe {

using nnet::Parameter;
using nnet::Tensor;
using nnet::Var;

void ProbeArch::Validate() const {
  if (bilstm_layers < 1 || fc_layers < 1) {
    throw Error(ErrorCode::kInvalidConfig, "probe needs at least one bi-LSTM and one FC layer");
  }
  if (hidden < 1 || fc_width < 1) throw Error(ErrorCode::kInvalidConfig, "layer widths must be >= 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw Error(ErrorCode::kInvalidConfig, "dropout must be in [0, 1)");
  if (!(leaky_slope >= 0.0)) throw Error(ErrorCode::kInvalidConfig, "leaky_slope must be >= 0");
}

nlohmann::json ProbeArch::ToJson() const {
  return {{"bilstm_layers", bilstm_layers}, {"hidden", hidden},
          {"fc_layers", fc_layers},         {"fc_width", fc_width},
          {"dropout", dropout},             {"leaky_slope", leaky_slope}};
}

ProbeArch ProbeArch::FromJson(const nlohmann::json &j) {
  ProbeArch a;
  try {
    for (const auto &[key, value] : j.items()) {
      if (key == "bilstm_layers") a.bilstm_layers = value.get<int>();
      else if (key == "hidden") a.hidden = value.get<int>();
      else if (key == "fc_layers") a.fc_layers = value.get<int>();
      else if (key == "fc_width") a.fc_width = value.get<int>();
      else if (key == "dropout") a.dropout = value.get<double>();
      else if (key == "leaky_slope") a.leaky_slope = value.get<double>();
      else throw Error(ErrorCode::kInvalidConfig, "unknown probe key '" + key + "'");
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("bad probe config: ") + e.what());
  }
  a.Validate();
  return a;
}

FrameProbeModel::FrameProbeModel(int input_dim, int vocab_size, const ProbeArch &arch,
                                 uint64_t seed)
    : input_dim_(input_dim), vocab_size_(vocab_size), arch_(arch) {
  arch_.Validate();
  if (input_dim < 1 || vocab_size < 2) {
    throw Error(ErrorCode::kInvalidConfig, "probe needs input_dim >= 1 and a non-trivial vocabulary");
  }
  nnet::Rng rng(seed);
  int width = input_dim;
  for (int i = 0; i < arch_.bilstm_layers; ++i) {
    lstm_.emplace_back("lstm" + std::to_string(i), width, arch_.hidden, rng);
    width = 2 * arch_.hidden;
  }
  for (int i = 0; i < arch_.fc_layers; ++i) {
    fc_.emplace_back("fc" + std::to_string(i), width, arch_.fc_width, rng);
    width = arch_.fc_width;
  }
  output_ = nnet::Linear("output", width, vocab_size, rng);
}

Var FrameProbeModel::Forward(nnet::Tape &tape, const Tensor &frames, bool train,
                             nnet::Rng &rng) {
  if (frames.cols() != input_dim_) {
    throw Error(ErrorCode::kShapeMismatch,
                "probe expects " + std::to_string(input_dim_) + "-dim frames, got " +
                    nnet::ShapeString(frames));
  }
  if (frames.rows() == 0) throw Error(ErrorCode::kShapeMismatch, "empty frame sequence");
  Var h = tape.Constant(frames);
  for (nnet::BiLstmLayer &layer : lstm_) {
    h = nnet::Dropout(layer.Forward(tape, h), arch_.dropout, train, rng);
  }
  for (nnet::Linear &layer : fc_) {
    h = nnet::Dropout(nnet::LeakyRelu(layer.Forward(tape, h), arch_.leaky_slope),
                      arch_.dropout, train, rng);
  }
  return nnet::LogSoftmax(output_.Forward(tape, h));
}

Tensor FrameProbeModel::LogProbs(const Tensor &frames) {
  nnet::Tape tape;
  nnet::Rng unused(0);
  return Forward(tape, frames, false, unused).value();
}

std::vector<Parameter *> FrameProbeModel::LstmParams() {
  std::vector<Parameter *> out;
  for (nnet::BiLstmLayer &l : lstm_) {
    for (nnet::LstmDirection *d : {&l.forward, &l.backward}) {
      out.insert(out.end(), {&d->wx, &d->wh, &d->b});
    }
  }
  return out;
}

std::vector<Parameter *> FrameProbeModel::HeadParams() {
  std::vector<Parameter *> out;
  for (nnet::Linear &l : fc_) out.insert(out.end(), {&l.weight, &l.bias});
  out.insert(out.end(), {&output_.weight, &output_.bias});
  return out;
}

std::vector<Parameter *> FrameProbeModel::Params() {
  std::vector<Parameter *> out = LstmParams();
  for (Parameter *p : HeadParams()) out.push_back(p);
  return out;
}

std::vector<const Parameter *> FrameProbeModel::ConstParams() const {
  auto *self = const_cast<FrameProbeModel *>(this);
  std::vector<const Parameter *> out;
  for (Parameter *p : self->Params()) out.push_back(p);
  return out;
}

void FrameProbeModel::Save(const std::string &path) const {
  nnet::SaveCheckpoint(path, ConstParams());
}

void FrameProbeModel::Load(const std::string &path) { nnet::LoadCheckpoint(path, Params()); }

void FrameProbeModel::CopyFrom(const FrameProbeModel &other) {
  std::vector<Parameter *> mine = Params();
  std::vector<const Parameter *> theirs = other.ConstParams();
  if (mine.size() != theirs.size()) {
    throw Error(ErrorCode::kShapeMismatch, "probe architectures differ");
  }
  for (size_t i = 0; i < mine.size(); ++i) {
    nnet::CheckSameShape(mine[i]->name.c_str(), mine[i]->value, theirs[i]->value);
    mine[i]->value = theirs[i]->value;
  }
}

Tensor ToTensor(const dataio::EmbeddingRecord &record) {
  Tensor t(record.frames, record.dim);
  for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = record.values[i];
  return t;
}

}  // namespace sluprobe::frameprobe
