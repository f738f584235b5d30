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

#include "sluprobe/frameprobe/train.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "sluprobe/common/error.h"
#include "sluprobe/metrics/scoring_report.h"
#include "sluprobe/nnet/ctc.h"
#include "sluprobe/nnet/optim.h"
#include "sluprobe/nnet/tape.h"

namespace sluprobe::frameprobe {

using nnet::Parameter;
using nnet::Tensor;

void TrainConfig::Validate() const {
  if (max_epochs < 1) throw Error(ErrorCode::kInvalidConfig, "max_epochs must be >= 1");
  if (patience < 1) throw Error(ErrorCode::kInvalidConfig, "patience must be >= 1");
  if (batch_size < 1) throw Error(ErrorCode::kInvalidConfig, "batch_size must be >= 1");
  if (!(learning_rate >= 0) || !(rho > 0 && rho < 1) || !(epsilon > 0)) {
    throw Error(ErrorCode::kInvalidConfig, "bad optimizer settings");
  }
}

nlohmann::json TrainConfig::ToJson() const {
  return {{"max_epochs", max_epochs}, {"patience", patience},
          {"seed", seed},             {"batch_size", batch_size},
          {"optimizer", "adadelta"},  {"learning_rate", learning_rate},
          {"rho", rho},               {"epsilon", epsilon},
          {"clip_norm", clip_norm},   {"selection", "dev_cer"},
          {"optimizer_instances", "one per stack (bi-LSTM, FC+output)"}};
}

TrainConfig TrainConfig::FromJson(const nlohmann::json &j) {
  TrainConfig c;
  try {
    for (const auto &[key, value] : j.items()) {
      if (key == "max_epochs") c.max_epochs = value.get<int>();
      else if (key == "patience") c.patience = value.get<int>();
      else if (key == "seed") c.seed = value.get<uint64_t>();
      else if (key == "batch_size") c.batch_size = value.get<int>();
      else if (key == "learning_rate") c.learning_rate = value.get<double>();
      else if (key == "rho") c.rho = value.get<double>();
      else if (key == "epsilon") c.epsilon = value.get<double>();
      else if (key == "clip_norm") c.clip_norm = value.get<double>();
      else throw Error(ErrorCode::kInvalidConfig, "unknown training key '" + key + "'");
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("bad training config: ") + e.what());
  }
  c.Validate();
  return c;
}

std::vector<Example> MakeExamples(const std::vector<const dataio::Utterance *> &utts,
                                  const ProbeVocab &vocab) {
  std::vector<Example> out;
  out.reserve(utts.size());
  for (const dataio::Utterance *u : utts) {
    Example e;
    e.id = u->entry.id;
    e.frames = ToTensor(*u->embedding);
    e.segment = u->segment;
    e.target = vocab.Encode(u->segment);
    out.push_back(std::move(e));
  }
  return out;
}

annot::ParseResult DecodeHypothesis(FrameProbeModel &model, const Tensor &frames,
                                    const ProbeVocab &vocab) {
  return vocab.Decode(nnet::CtcGreedyDecode(model.LogProbs(frames)));
}

EvalResult Evaluate(FrameProbeModel &model, const std::vector<Example> &examples,
                    const ProbeVocab &vocab) {
  if (examples.empty()) throw Error(ErrorCode::kEmptyDataset, "nothing to evaluate");
  EvalResult r;
  std::vector<annot::MultiHot> ref_bags, hyp_bags;
  for (const Example &e : examples) {
    annot::SemSegment hyp = DecodeHypothesis(model, e.frames, vocab).segment;
    r.counts.Add(e.segment, hyp);
    ref_bags.push_back(annot::BagOfConcepts(e.segment, vocab.inventory()));
    hyp_bags.push_back(annot::BagOfConcepts(hyp, vocab.inventory()));
    r.hypotheses.push_back(std::move(hyp));
  }
  r.f1 = metrics::MicroF1(ref_bags, hyp_bags);
  return r;
}

TrainResult TrainProbe(FrameProbeModel &model, const std::vector<Example> &train,
                       const std::vector<Example> &dev, const ProbeVocab &vocab,
                       const TrainConfig &config,
                       const std::function<void(const EpochLog &)> &on_epoch) {
  config.Validate();
  if (train.empty()) throw Error(ErrorCode::kEmptyDataset, "empty training set");
  if (dev.empty()) throw Error(ErrorCode::kEmptyDataset, "empty dev set");
  if (static_cast<int>(vocab.size()) != model.vocab_size()) {
    throw Error(ErrorCode::kShapeMismatch, "model output width differs from the vocabulary size");
  }
  for (const std::vector<Example> *set : {&train, &dev}) {
    for (const Example &e : *set) {
      if (e.frames.cols() != model.input_dim()) {
        throw Error(ErrorCode::kShapeMismatch,
                    "utterance '" + e.id + "' has " + nnet::ShapeString(e.frames) +
                        " frames, model expects dim " + std::to_string(model.input_dim()));
      }
    }
  }

  const nnet::AdadeltaConfig opt{config.learning_rate, config.rho, config.epsilon};
  std::vector<Parameter *> lstm_params = model.LstmParams();
  std::vector<Parameter *> head_params = model.HeadParams();
  std::vector<Parameter *> all = model.Params();
  nnet::Adadelta lstm_opt(lstm_params, opt);
  nnet::Adadelta head_opt(head_params, opt);
  nnet::Rng rng(config.seed);

  TrainResult result;
  std::vector<Tensor> best;
  int stale = 0;
  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<char> impossible(train.size(), 0);
  for (size_t i = 0; i < train.size(); ++i) {
    impossible[i] = train[i].frames.rows() < nnet::CtcMinFrames(train[i].target);
    result.impossible += impossible[i];
  }

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    // Length-bucketed batches in a seeded random order.
    std::shuffle(order.begin(), order.end(), rng);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return train[a].frames.rows() < train[b].frames.rows();
    });
    std::vector<std::vector<size_t>> batches;
    for (size_t i = 0; i < order.size(); i += config.batch_size) {
      batches.emplace_back(order.begin() + i,
                           order.begin() + std::min(order.size(), i + config.batch_size));
    }
    std::shuffle(batches.begin(), batches.end(), rng);

    double loss_sum = 0.0;
    int loss_count = 0;
    for (const std::vector<size_t> &batch : batches) {
      nnet::ZeroGrads(all);
      int used = 0;
      for (size_t i : batch) {
        if (impossible[i]) continue;
        nnet::Tape tape;
        nnet::Var lp = model.Forward(tape, train[i].frames, true, rng);
        nnet::Var loss = nnet::CtcLoss(lp, train[i].target);
        loss_sum += loss.value()(0, 0);
        ++loss_count;
        ++used;
        tape.Backward(loss);
      }
      if (used == 0) continue;
      for (Parameter *p : all) p->grad /= static_cast<double>(used);
      nnet::ClipGradNorm(all, config.clip_norm);
      lstm_opt.Step();
      head_opt.Step();
    }

    EvalResult eval = Evaluate(model, dev, vocab);
    EpochLog row;
    row.epoch = epoch;
    row.loss = loss_count > 0 ? loss_sum / loss_count : 0.0;
    row.cher = eval.Rate(metrics::Metric::kChER);
    row.wer = eval.Rate(metrics::Metric::kWER);
    row.cer = eval.Rate(metrics::Metric::kCER);
    row.cver = eval.Rate(metrics::Metric::kCVER);
    result.log.push_back(row);
    if (on_epoch) on_epoch(row);

    if (best.empty() || row.cer < result.best_dev_cer) {
      result.best_dev_cer = row.cer;
      result.best_epoch = epoch;
      best.clear();
      for (Parameter *p : all) best.push_back(p->value);
      stale = 0;
    } else if (++stale >= config.patience) {
      break;
    }
  }
  for (size_t i = 0; i < all.size(); ++i) all[i]->value = best[i];
  nnet::ZeroGrads(all);
  return result;
}

std::string TrainingLogCsv(const std::vector<EpochLog> &log) {
  std::string out = "epoch,loss,cher,wer,cer,cver\n";
  char buf[64];
  for (const EpochLog &row : log) {
    std::snprintf(buf, sizeof(buf), "%.6f", row.loss);
    out += std::to_string(row.epoch) + "," + buf + "," + metrics::FormatPercent(row.cher) +
           "," + metrics::FormatPercent(row.wer) + "," + metrics::FormatPercent(row.cer) +
           "," + metrics::FormatPercent(row.cver) + "\n";
  }
  return out;
}

}  // namespace sluprobe::frameprobe
