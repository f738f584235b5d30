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

#include "sluprobe/sentprobe/boc.h"

#include <algorithm>
#include <numeric>

#include "sluprobe/annot/tagged.h"
#include "sluprobe/common/error.h"
#include "sluprobe/nnet/checkpoint.h"
#include "sluprobe/nnet/losses.h"
#include "sluprobe/nnet/optim.h"
#include "sluprobe/sentprobe/normalize.h"
#include "record_tensor.h"

namespace sluprobe::sentprobe {

using nnet::Parameter;
using nnet::Tensor;

void BocConfig::Validate() const {
  if (hidden.size() != 3) {
    throw Error(ErrorCode::kInvalidConfig, "the classifier takes exactly three hidden widths");
  }
  for (int h : hidden) {
    if (h < 1) throw Error(ErrorCode::kInvalidConfig, "hidden widths must be >= 1");
  }
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "dropout must be in [0, 1)");
  }
  if (max_epochs < 1) throw Error(ErrorCode::kInvalidConfig, "max_epochs must be >= 1");
  if (patience < 1) throw Error(ErrorCode::kInvalidConfig, "patience must be >= 1");
  if (batch_size < 1) throw Error(ErrorCode::kInvalidConfig, "batch_size must be >= 1");
  if (!(learning_rate >= 0.0)) throw Error(ErrorCode::kInvalidConfig, "bad learning_rate");
  if (!(max_pos_weight >= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "max_pos_weight must be >= 1");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "threshold must be in (0, 1)");
  }
}

nlohmann::json BocConfig::ToJson() const {
  return {{"hidden", hidden},
          {"dropout", dropout},
          {"max_epochs", max_epochs},
          {"patience", patience},
          {"batch_size", batch_size},
          {"optimizer", "adam"},
          {"learning_rate", learning_rate},
          {"max_pos_weight", max_pos_weight},
          {"threshold", threshold},
          {"seed", seed},
          {"selection", "dev_micro_f1"},
          {"input_normalization", "l2_fix_norm"}};
}

BocConfig BocConfig::FromJson(const nlohmann::json &j) {
  BocConfig c;
  try {
    for (const auto &[key, value] : j.items()) {
      if (key == "hidden") c.hidden = value.get<std::vector<int>>();
      else if (key == "dropout") c.dropout = value.get<double>();
      else if (key == "max_epochs") c.max_epochs = value.get<int>();
      else if (key == "patience") c.patience = value.get<int>();
      else if (key == "batch_size") c.batch_size = value.get<int>();
      else if (key == "learning_rate") c.learning_rate = value.get<double>();
      else if (key == "max_pos_weight") c.max_pos_weight = value.get<double>();
      else if (key == "threshold") c.threshold = value.get<double>();
      else if (key == "seed") c.seed = value.get<uint64_t>();
      else throw Error(ErrorCode::kInvalidConfig, "unknown classifier key '" + key + "'");
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("bad classifier config: ") + e.what());
  }
  c.Validate();
  return c;
}

BocClassifier::BocClassifier(int input_dim, int num_labels, const BocConfig &config)
    : input_dim_(input_dim), num_labels_(num_labels), dropout_(config.dropout) {
  config.Validate();
  if (input_dim < 1 || num_labels < 1) {
    throw Error(ErrorCode::kInvalidConfig, "classifier needs input_dim >= 1 and labels >= 1");
  }
  nnet::Rng rng(config.seed);
  int in = input_dim;
  for (size_t i = 0; i < config.hidden.size(); ++i) {
    layers_.emplace_back("boc.fc" + std::to_string(i), in, config.hidden[i], rng);
    in = config.hidden[i];
  }
  layers_.emplace_back("boc.out", in, num_labels, rng);
}

nnet::Var BocClassifier::Forward(nnet::Tape &tape, const Tensor &x, bool train, nnet::Rng &rng) {
  if (x.cols() != input_dim_) {
    throw Error(ErrorCode::kShapeMismatch, "embedding " + nnet::ShapeString(x) +
                                               " does not match classifier input dim " +
                                               std::to_string(input_dim_));
  }
  nnet::Var h = tape.Constant(normalize_inputs_ ? L2FixNorm(x) : x);
  for (size_t i = 0; i + 1 < layers_.size(); ++i) {
    h = nnet::Dropout(nnet::Relu(layers_[i].Forward(tape, h)), dropout_, train, rng);
  }
  return nnet::Sigmoid(layers_.back().Forward(tape, h));
}

Tensor BocClassifier::Scores(const Tensor &x) {
  nnet::Tape tape;
  nnet::Rng unused(0);
  return Forward(tape, x, false, unused).value();
}

annot::MultiHot BocClassifier::Predict(const Tensor &x, double threshold) {
  if (x.rows() != 1) throw Error(ErrorCode::kShapeMismatch, "Predict takes one embedding");
  const Tensor s = Scores(x);
  annot::MultiHot out(num_labels_);
  for (int c = 0; c < num_labels_; ++c) out.bits[c] = s(0, c) >= threshold;
  return out;
}

std::vector<Parameter *> BocClassifier::Params() {
  std::vector<Parameter *> out;
  for (nnet::Linear &l : layers_) {
    out.push_back(&l.weight);
    out.push_back(&l.bias);
  }
  return out;
}

std::vector<const Parameter *> BocClassifier::ConstParams() const {
  std::vector<const Parameter *> out;
  for (const nnet::Linear &l : layers_) {
    out.push_back(&l.weight);
    out.push_back(&l.bias);
  }
  return out;
}

void BocClassifier::Save(const std::string &path) const {
  nnet::SaveCheckpoint(path, ConstParams());
}

void BocClassifier::Load(const std::string &path) { nnet::LoadCheckpoint(path, Params()); }

std::vector<BocExample> MakeBocExamples(const std::vector<const dataio::Utterance *> &utts,
                                        const annot::ConceptInventory &inv) {
  std::vector<BocExample> out;
  out.reserve(utts.size());
  for (const dataio::Utterance *u : utts) {
    BocExample e;
    e.id = u->entry.id;
    const dataio::EmbeddingRecord &rec = *u->embedding;
    if (rec.frames != 1) {
      throw Error(ErrorCode::kShapeMismatch,
                  "utterance '" + e.id + "' is not a single sentence embedding");
    }
    e.x = internal::RecordTensor(rec);
    e.bits = annot::BagOfConcepts(u->segment, inv);
    out.push_back(std::move(e));
  }
  return out;
}

Tensor PositiveWeights(const std::vector<annot::MultiHot> &labels, double max_weight) {
  if (labels.empty()) throw Error(ErrorCode::kEmptyDataset, "no labels to weight");
  const size_t c = labels.front().size();
  std::vector<double> pos(c, 0.0);
  for (const annot::MultiHot &m : labels) {
    if (m.size() != c) throw Error(ErrorCode::kShapeMismatch, "label vectors differ in size");
    for (size_t i = 0; i < c; ++i) pos[i] += m.bits[i] ? 1.0 : 0.0;
  }
  Tensor w(1, static_cast<Eigen::Index>(c));
  const double n = static_cast<double>(labels.size());
  for (size_t i = 0; i < c; ++i) {
    w(0, i) = std::clamp((n - pos[i]) / std::max(pos[i], 1.0), 1.0, max_weight);
  }
  return w;
}

namespace {

void CheckExamples(const BocClassifier &clf, const std::vector<BocExample> &set) {
  for (const BocExample &e : set) {
    if (e.x.rows() != 1 || e.x.cols() != clf.input_dim()) {
      throw Error(ErrorCode::kShapeMismatch, "example '" + e.id + "' has shape " +
                                                 nnet::ShapeString(e.x) + ", expected 1x" +
                                                 std::to_string(clf.input_dim()));
    }
    if (static_cast<int>(e.bits.size()) != clf.num_labels()) {
      throw Error(ErrorCode::kShapeMismatch, "example '" + e.id + "' has a label of the wrong size");
    }
  }
}

}  // namespace

BocTrainResult TrainBoc(BocClassifier &clf, const std::vector<BocExample> &train,
                        const std::vector<BocExample> &dev, const BocConfig &config) {
  config.Validate();
  if (train.empty()) throw Error(ErrorCode::kEmptyDataset, "empty training set");
  if (dev.empty()) throw Error(ErrorCode::kEmptyDataset, "empty dev set");
  CheckExamples(clf, train);
  CheckExamples(clf, dev);

  std::vector<annot::MultiHot> labels;
  for (const BocExample &e : train) labels.push_back(e.bits);
  const Tensor pos_weights = PositiveWeights(labels, config.max_pos_weight);

  std::vector<Parameter *> params = clf.Params();
  nnet::Adam opt(params, nnet::AdamConfig{config.learning_rate});
  nnet::Rng rng(config.seed);
  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);

  BocTrainResult result;
  std::vector<Tensor> best;
  int stale = 0;
  const Eigen::Index d = clf.input_dim();
  const Eigen::Index c = clf.num_labels();
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    size_t batches = 0;
    for (size_t start = 0; start < order.size(); start += config.batch_size) {
      const size_t end = std::min(order.size(), start + config.batch_size);
      Tensor x(end - start, d);
      Tensor y(end - start, c);
      for (size_t k = start; k < end; ++k) {
        const BocExample &e = train[order[k]];
        x.row(k - start) = e.x.row(0);
        for (Eigen::Index j = 0; j < c; ++j) y(k - start, j) = e.bits.bits[j];
      }
      nnet::ZeroGrads(params);
      nnet::Tape tape;
      nnet::Var loss = nnet::WeightedBce(clf.Forward(tape, x, true, rng), y, pos_weights);
      tape.Backward(loss);
      opt.Step();
      loss_sum += loss.value()(0, 0);
      ++batches;
    }

    BocEpoch row;
    row.epoch = epoch;
    row.loss = loss_sum / static_cast<double>(batches);
    row.dev_f1 = EvaluateBoc(clf, dev, config.threshold).f1();
    result.log.push_back(row);
    if (best.empty() || row.dev_f1 > result.best_dev_f1) {
      result.best_dev_f1 = row.dev_f1;
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

metrics::MicroF1Counts EvaluateBoc(BocClassifier &clf, const std::vector<BocExample> &examples,
                                   double threshold) {
  if (examples.empty()) throw Error(ErrorCode::kEmptyDataset, "nothing to evaluate");
  CheckExamples(clf, examples);
  std::vector<annot::MultiHot> refs, preds;
  for (const BocExample &e : examples) {
    refs.push_back(e.bits);
    preds.push_back(clf.Predict(e.x, threshold));
  }
  return metrics::MicroF1(refs, preds);
}

std::string PredictionJsonl(BocClassifier &clf, const std::vector<BocExample> &examples,
                            double threshold) {
  std::string out;
  for (const BocExample &e : examples) {
    const Tensor s = clf.Scores(e.x);
    nlohmann::ordered_json line;
    line["id"] = e.id;
    std::vector<int> bits(s.cols());
    std::vector<double> scores(s.cols());
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
      scores[j] = s(0, j);
      bits[j] = s(0, j) >= threshold ? 1 : 0;
    }
    line["bits"] = bits;
    line["scores"] = scores;
    out += line.dump() + "\n";
  }
  return out;
}

}  // namespace sluprobe::sentprobe
