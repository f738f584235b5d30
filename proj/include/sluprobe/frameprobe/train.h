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

#ifndef SLUPROBE_FRAMEPROBE_TRAIN_H_
#define SLUPROBE_FRAMEPROBE_TRAIN_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sluprobe/annot/tagged.h"
#include "sluprobe/dataio/corpus.h"
#include "sluprobe/frameprobe/model.h"
#include "sluprobe/frameprobe/vocab.h"
#include "sluprobe/metrics/f1.h"
#include "sluprobe/metrics/rates.h"
#include "sluprobe/nnet/tensor.h"

namespace sluprobe::frameprobe {

// Training regime. One Adadelta instance drives the bi-LSTM stack and a
// second one the FC stack plus output layer; both share these settings.
struct TrainConfig {
  int max_epochs = 30;
  int patience = 5;
  uint64_t seed = 1;
  int batch_size = 8;
  double learning_rate = 1.0;
  double rho = 0.95;
  double epsilon = 1e-6;
  // Joint gradient-norm clip per optimizer step; <= 0 disables.
  double clip_norm = 5.0;

  void Validate() const;
  nlohmann::json ToJson() const;
  static TrainConfig FromJson(const nlohmann::json &j);
};

struct Example {
  std::string id;
  nnet::Tensor frames;
  annot::SemSegment segment;
  std::vector<int> target;
};

// Throws Error{OutOfVocabulary} when a transcript is not encodable.
std::vector<Example> MakeExamples(const std::vector<const dataio::Utterance *> &utts,
                                  const ProbeVocab &vocab);

struct EpochLog {
  int epoch = 0;
  double loss = 0.0;  // mean CTC loss per trainable utterance
  double cher = 0.0;  // dev rates as ratios
  double wer = 0.0;
  double cer = 0.0;
  double cver = 0.0;
};

struct TrainResult {
  std::vector<EpochLog> log;
  int best_epoch = 0;
  double best_dev_cer = 0.0;
  // Utterances skipped because they are too short for their target.
  int impossible = 0;
};

// Trains in place and leaves `model` at the epoch with the lowest dev CER.
// Stops after `patience` epochs without a strict improvement. Throws
// Error{EmptyDataset} or Error{ShapeMismatch}.
TrainResult TrainProbe(FrameProbeModel &model, const std::vector<Example> &train,
                       const std::vector<Example> &dev, const ProbeVocab &vocab,
                       const TrainConfig &config,
                       const std::function<void(const EpochLog &)> &on_epoch = {});

// Greedy CTC decode, tags reinserted, lenient parse.
annot::ParseResult DecodeHypothesis(FrameProbeModel &model, const nnet::Tensor &frames,
                                    const ProbeVocab &vocab);

struct EvalResult {
  metrics::CorpusCounts counts;
  metrics::MicroF1Counts f1;
  std::vector<annot::SemSegment> hypotheses;

  double Rate(metrics::Metric m) const { return counts.Rate(m).value; }
};

// Throws Error{EmptyDataset}.
EvalResult Evaluate(FrameProbeModel &model, const std::vector<Example> &examples,
                    const ProbeVocab &vocab);

// CSV with header epoch,loss,cher,wer,cer,cver (rates in percent).
std::string TrainingLogCsv(const std::vector<EpochLog> &log);

}  // namespace sluprobe::frameprobe

#endif  // SLUPROBE_FRAMEPROBE_TRAIN_H_
