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

#ifndef SLUPROBE_SENTPROBE_BOC_H_
#define SLUPROBE_SENTPROBE_BOC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sluprobe/annot/concept.h"
#include "sluprobe/dataio/corpus.h"
#include "sluprobe/metrics/f1.h"
#include "sluprobe/nnet/ops.h"
#include "sluprobe/nnet/tape.h"
#include "sluprobe/nnet/tensor.h"

namespace sluprobe::sentprobe {

struct BocConfig {
  // Three hidden widths, giving four fully connected layers.
  std::vector<int> hidden = {768, 512, 256};
  double dropout = 0.1;
  int max_epochs = 50;
  int patience = 10;
  int batch_size = 32;
  double learning_rate = 1e-4;  // Adam
  double max_pos_weight = 100.0;
  double threshold = 0.5;
  uint64_t seed = 1;

  void Validate() const;
  nlohmann::json ToJson() const;
  static BocConfig FromJson(const nlohmann::json &j);
};

// Four-layer sigmoid classifier from a sentence embedding to a multi-hot
// bag of concepts. Inputs are passed through L2FixNorm before every
// forward pass.
class BocClassifier {
 public:
  BocClassifier(int input_dim, int num_labels, const BocConfig &config);

  // Rows of `x` are embeddings; returns n x C probabilities.
  nnet::Var Forward(nnet::Tape &tape, const nnet::Tensor &x, bool train, nnet::Rng &rng);
  nnet::Tensor Scores(const nnet::Tensor &x);
  // Bit i is set when score i >= threshold.
  annot::MultiHot Predict(const nnet::Tensor &x, double threshold);

  std::vector<nnet::Parameter *> Params();
  std::vector<const nnet::Parameter *> ConstParams() const;
  void Save(const std::string &path) const;
  void Load(const std::string &path);

  int input_dim() const { return input_dim_; }
  int num_labels() const { return num_labels_; }

  // Disables the input normalization; used only to reproduce what goes
  // wrong without it.
  void set_normalize_inputs(bool on) { normalize_inputs_ = on; }

 private:
  int input_dim_;
  int num_labels_;
  double dropout_;
  bool normalize_inputs_ = true;
  std::vector<nnet::Linear> layers_;
};

struct BocExample {
  std::string id;
  nnet::Tensor x;  // 1 x d
  annot::MultiHot bits;
};

// Examples from sentence-level utterances; labels are their bag of concepts.
std::vector<BocExample> MakeBocExamples(const std::vector<const dataio::Utterance *> &utts,
                                        const annot::ConceptInventory &inv);

// w_i = clamp(N_neg,i / max(N_pos,i, 1), 1, max_weight), 1 x C.
nnet::Tensor PositiveWeights(const std::vector<annot::MultiHot> &labels, double max_weight);

struct BocEpoch {
  int epoch = 0;
  double loss = 0.0;
  double dev_f1 = 0.0;
};

struct BocTrainResult {
  std::vector<BocEpoch> log;
  int best_epoch = 0;
  double best_dev_f1 = 0.0;
};

// Adam on weighted BCE; keeps the epoch with the best dev micro-F1 (first
// one on ties). Throws EmptyDataset, ShapeMismatch or ZeroVector.
BocTrainResult TrainBoc(BocClassifier &clf, const std::vector<BocExample> &train,
                        const std::vector<BocExample> &dev, const BocConfig &config);

metrics::MicroF1Counts EvaluateBoc(BocClassifier &clf, const std::vector<BocExample> &examples,
                                   double threshold);

// JSON lines {"id", "bits", "scores"}.
std::string PredictionJsonl(BocClassifier &clf, const std::vector<BocExample> &examples,
                            double threshold);

}  // namespace sluprobe::sentprobe

#endif  // SLUPROBE_SENTPROBE_BOC_H_
