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

#include "sluprobe/sentprobe/pooler.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "record_tensor.h"
#include "sluprobe/common/error.h"
#include "sluprobe/nnet/checkpoint.h"
#include "sluprobe/nnet/losses.h"
#include "sluprobe/nnet/optim.h"

namespace sluprobe::sentprobe {

using nnet::Parameter;
using nnet::Tensor;
using nnet::Var;

AttentivePooler::AttentivePooler(int frame_dim, int out_dim, uint64_t seed)
    : frame_dim_(frame_dim), out_dim_(out_dim) {
  if (frame_dim < 1 || out_dim < 1) {
    throw Error(ErrorCode::kInvalidConfig, "pooler dimensions must be >= 1");
  }
  nnet::Rng rng(seed);
  scorer_ = Parameter("pool.scorer",
                      nnet::UniformTensor(frame_dim, 1, std::sqrt(3.0 / frame_dim), rng));
  projection_ = nnet::Linear("pool.proj", frame_dim, out_dim, rng);
}

Var AttentivePooler::Scores(nnet::Tape &tape, Var frames) {
  if (frames.cols() != frame_dim_ || frames.rows() < 1) {
    throw Error(ErrorCode::kShapeMismatch, "frames " + nnet::ShapeString(frames.value()) +
                                               " do not match pooler dim " +
                                               std::to_string(frame_dim_));
  }
  return nnet::Softmax(nnet::Transpose(nnet::MatMul(frames, tape.Param(scorer_))));
}

Var AttentivePooler::Pool(nnet::Tape &tape, Var frames) {
  return nnet::MatMul(Scores(tape, frames), frames);
}

Var AttentivePooler::Forward(nnet::Tape &tape, Var frames) {
  return nnet::Tanh(projection_.Forward(tape, Pool(tape, frames)));
}

Tensor AttentivePooler::Attention(const Tensor &frames) {
  nnet::Tape tape;
  return Scores(tape, tape.Constant(frames)).value();
}

Tensor AttentivePooler::Embed(const Tensor &frames) {
  nnet::Tape tape;
  return Forward(tape, tape.Constant(frames)).value();
}

std::vector<Parameter *> AttentivePooler::Params() {
  return {&scorer_, &projection_.weight, &projection_.bias};
}

std::vector<const Parameter *> AttentivePooler::ConstParams() const {
  return {&scorer_, &projection_.weight, &projection_.bias};
}

void AttentivePooler::Save(const std::string &path) const {
  nnet::SaveCheckpoint(path, ConstParams());
}

void AttentivePooler::Load(const std::string &path) { nnet::LoadCheckpoint(path, Params()); }

void DistillConfig::Validate() const {
  if (max_epochs < 1) throw Error(ErrorCode::kInvalidConfig, "max_epochs must be >= 1");
  if (patience < 1) throw Error(ErrorCode::kInvalidConfig, "patience must be >= 1");
  if (batch_size < 1) throw Error(ErrorCode::kInvalidConfig, "batch_size must be >= 1");
  if (!(learning_rate >= 0.0)) throw Error(ErrorCode::kInvalidConfig, "bad learning_rate");
}

nlohmann::json DistillConfig::ToJson() const {
  return {{"max_epochs", max_epochs}, {"patience", patience},
          {"batch_size", batch_size}, {"optimizer", "adam"},
          {"learning_rate", learning_rate}, {"seed", seed},
          {"loss", "1 - cosine"},     {"selection", "dev_loss"}};
}

DistillConfig DistillConfig::FromJson(const nlohmann::json &j) {
  DistillConfig c;
  try {
    for (const auto &[key, value] : j.items()) {
      if (key == "max_epochs") c.max_epochs = value.get<int>();
      else if (key == "patience") c.patience = value.get<int>();
      else if (key == "batch_size") c.batch_size = value.get<int>();
      else if (key == "learning_rate") c.learning_rate = value.get<double>();
      else if (key == "seed") c.seed = value.get<uint64_t>();
      else throw Error(ErrorCode::kInvalidConfig, "unknown pooling key '" + key + "'");
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("bad pooling config: ") + e.what());
  }
  c.Validate();
  return c;
}

namespace {

struct PairTensors {
  Tensor frames;
  Tensor target;
};

std::vector<PairTensors> ToTensors(const AttentivePooler &pooler,
                                   const std::vector<dataio::DistillPair> &pairs) {
  std::vector<PairTensors> out;
  out.reserve(pairs.size());
  for (const dataio::DistillPair &p : pairs) {
    PairTensors t{internal::RecordTensor(p.frames), internal::RecordTensor(p.target)};
    if (t.frames.cols() != pooler.frame_dim() || t.frames.rows() < 1 || t.target.rows() != 1 ||
        t.target.cols() != pooler.out_dim()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "pair '" + p.frames.id + "' has frames " + nnet::ShapeString(t.frames) +
                      " and target " + nnet::ShapeString(t.target));
    }
    out.push_back(std::move(t));
  }
  return out;
}

double MeanLoss(AttentivePooler &pooler, const std::vector<PairTensors> &pairs) {
  double sum = 0.0;
  for (const PairTensors &p : pairs) {
    nnet::Tape tape;
    sum += nnet::CosineLoss(pooler.Forward(tape, tape.Constant(p.frames)), p.target).value()(0, 0);
  }
  return sum / static_cast<double>(pairs.size());
}

}  // namespace

double MeanCosineLoss(AttentivePooler &pooler, const std::vector<dataio::DistillPair> &pairs) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyDataset, "no pairs");
  return MeanLoss(pooler, ToTensors(pooler, pairs));
}

DistillResult DistillPooler(AttentivePooler &pooler, const std::vector<dataio::DistillPair> &train,
                            const std::vector<dataio::DistillPair> &dev,
                            const DistillConfig &config) {
  config.Validate();
  if (train.empty()) throw Error(ErrorCode::kEmptyDataset, "empty training set");
  if (dev.empty()) throw Error(ErrorCode::kEmptyDataset, "empty dev set");
  const std::vector<PairTensors> tr = ToTensors(pooler, train);
  const std::vector<PairTensors> dv = ToTensors(pooler, dev);

  std::vector<Parameter *> params = pooler.Params();
  nnet::Adam opt(params, nnet::AdamConfig{config.learning_rate});
  nnet::Rng rng(config.seed);
  std::vector<size_t> order(tr.size());
  std::iota(order.begin(), order.end(), 0);

  DistillResult result;
  std::vector<Tensor> best;
  int stale = 0;
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    for (size_t start = 0; start < order.size(); start += config.batch_size) {
      const size_t end = std::min(order.size(), start + config.batch_size);
      nnet::ZeroGrads(params);
      for (size_t k = start; k < end; ++k) {
        const PairTensors &p = tr[order[k]];
        nnet::Tape tape;
        Var loss = nnet::CosineLoss(pooler.Forward(tape, tape.Constant(p.frames)), p.target);
        loss_sum += loss.value()(0, 0);
        tape.Backward(loss);
      }
      for (Parameter *p : params) p->grad /= static_cast<double>(end - start);
      opt.Step();
    }

    DistillEpoch row;
    row.epoch = epoch;
    row.train_loss = loss_sum / static_cast<double>(tr.size());
    row.dev_loss = MeanLoss(pooler, dv);
    result.log.push_back(row);
    if (best.empty() || row.dev_loss < result.best_dev_loss) {
      result.best_dev_loss = row.dev_loss;
      result.best_epoch = epoch;
      best.clear();
      for (Parameter *p : params) best.push_back(p->value);
      stale = 0;
    } else if (++stale >= config.patience) {
      break;
    }
  }
  for (size_t i = 0; i < params.size(); ++i) params[i]->value = best[i];
  nnet::ZeroGrads(params);
  return result;
}

}  // namespace sluprobe::sentprobe
