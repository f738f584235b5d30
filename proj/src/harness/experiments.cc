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

#include "sluprobe/harness/experiments.h"

#include <algorithm>
#include <memory>
#include <set>

#include "sluprobe/annot/tagged.h"
#include "sluprobe/common/error.h"
#include "sluprobe/common/version.h"
#include "sluprobe/frameprobe/model.h"
#include "sluprobe/frameprobe/train.h"
#include "sluprobe/frameprobe/vocab.h"
#include "sluprobe/metrics/f1.h"
#include "sluprobe/metrics/scoring_report.h"
#include "sluprobe/sentprobe/boc.h"

namespace sluprobe::harness {

using dataio::Split;
using frameprobe::Example;
using frameprobe::FrameProbeModel;
using frameprobe::ProbeVocab;
using metrics::Metric;

std::optional<size_t> UnimodalMinimum(const std::vector<double> &curve) {
  if (curve.empty()) return std::nullopt;
  const size_t m = static_cast<size_t>(std::min_element(curve.begin(), curve.end()) - curve.begin());
  for (size_t i = 0; i < m; ++i) {
    if (curve[i + 1] > curve[i]) return std::nullopt;
  }
  for (size_t i = m; i + 1 < curve.size(); ++i) {
    if (curve[i + 1] < curve[i]) return std::nullopt;
  }
  return m;
}

namespace {

constexpr const char *kFrozenNote =
    "encoder frozen: probes read fixed embeddings; encoder fine-tuning rows are N/A";

ExperimentReport NewReport(const ExperimentConfig &cfg, const std::string &kind) {
  ExperimentReport r;
  r.name = cfg.name;
  r.toolkit_version = kToolkitVersion;
  r.config = cfg.ToJson();
  r.summary["experiment"] = kind;
  r.notes.push_back(kFrozenNote);
  return r;
}

void Notify(const Progress &progress, const std::string &line) {
  if (progress) progress(line);
}

void CheckCoverage(const ProbeVocab &vocab, const std::vector<const dataio::Utterance *> &utts) {
  for (const dataio::Utterance *u : utts) {
    const std::set<std::string> missing = vocab.MissingCharacters(u->segment);
    if (!missing.empty()) {
      std::string list;
      for (const std::string &ch : missing) list += (list.empty() ? "'" : ", '") + ch + "'";
      throw Error(ErrorCode::kVocabularyIncompatible,
                  "probe characters do not cover " + list + " in utterance '" + u->entry.id +
                      "' (" + u->entry.lang + "/" + std::string(dataio::SplitName(u->entry.split)) + ")");
    }
  }
}

// Frame-level data of one language at one layer, split by split.
struct FrameSets {
  std::vector<Example> train, dev, test;
};

std::vector<Example> ExamplesOf(const dataio::Corpus &corpus, const std::string &lang, Split split,
                                const ProbeVocab &vocab) {
  const auto utts = corpus.Select(lang, split);
  CheckCoverage(vocab, utts);
  return frameprobe::MakeExamples(utts, vocab);
}

// Loads `lang` at `layer` for `splits`, crediting the access to every log.
FrameSets LoadFrames(const DataSource &source, const std::string &lang, int layer,
                     const std::set<Split> &splits, const ProbeVocab &vocab,
                     const std::vector<dataio::AccessLog *> &logs) {
  dataio::AccessLog log;
  dataio::LoadOptions opts;
  opts.layer = layer;
  opts.langs = {lang};
  opts.splits = splits;
  opts.log = &log;
  const dataio::Corpus corpus = source.Frames(opts);
  for (dataio::AccessLog *l : logs) {
    for (const auto &[touched_lang, split] : log.touched()) l->Record(touched_lang, split);
  }
  FrameSets out;
  if (splits.count(Split::kTrain)) out.train = ExamplesOf(corpus, lang, Split::kTrain, vocab);
  if (splits.count(Split::kDev)) out.dev = ExamplesOf(corpus, lang, Split::kDev, vocab);
  if (splits.count(Split::kTest)) out.test = ExamplesOf(corpus, lang, Split::kTest, vocab);
  return out;
}

int InputDim(const std::vector<Example> &examples) {
  if (examples.empty()) throw Error(ErrorCode::kEmptyDataset, "no frame-level examples");
  return static_cast<int>(examples.front().frames.cols());
}

frameprobe::TrainResult Fit(FrameProbeModel &model, const FrameSets &data,
                            const ProbeVocab &vocab, const ExperimentConfig &cfg, uint64_t seed) {
  frameprobe::TrainConfig tc = cfg.train;
  tc.seed = seed;
  return frameprobe::TrainProbe(model, data.train, data.dev, vocab, tc);
}

// Bag-of-concepts F1 of decoded hypotheses, through their concept sequences.
metrics::MicroF1Counts FrameWiseF1(const frameprobe::EvalResult &eval,
                                   const std::vector<Example> &examples,
                                   const annot::ConceptInventory &inv) {
  std::vector<annot::MultiHot> refs, hyps;
  for (size_t i = 0; i < examples.size(); ++i) {
    refs.push_back(metrics::SequenceToBoc(annot::ConceptSequence(examples[i].segment), inv));
    hyps.push_back(metrics::SequenceToBoc(annot::ConceptSequence(eval.hypotheses[i]), inv));
  }
  return metrics::MicroF1(refs, hyps);
}

ReportRow FrameRow(const ExperimentConfig &cfg, const std::string &protocol, int layer,
                   uint64_t seed, const std::string &train_data, const std::string &test_data,
                   Split split, const frameprobe::EvalResult &eval,
                   const std::vector<Example> &examples, const annot::ConceptInventory &inv,
                   const frameprobe::TrainResult &train) {
  ReportRow r;
  r.experiment = cfg.name;
  r.protocol = protocol;
  r.layer = layer;
  r.seed = seed;
  r.train_data = train_data;
  r.test_data = test_data;
  r.split = std::string(dataio::SplitName(split));
  r.cher = eval.Rate(Metric::kChER);
  r.wer = eval.Rate(Metric::kWER);
  r.cer = eval.Rate(Metric::kCER);
  r.cver = eval.Rate(Metric::kCVER);
  r.f1 = FrameWiseF1(eval, examples, inv).f1();
  r.best_epoch = train.best_epoch;
  r.epochs = static_cast<int>(train.log.size());
  return r;
}

int SingleLayer(const ExperimentConfig &cfg, const DataSource &source) {
  if (cfg.layers.size() != 1) {
    throw Error(ErrorCode::kInvalidConfig, "this experiment needs exactly one layer");
  }
  const int layer = cfg.layers.front();
  if (!source.FrameLayers().count(layer)) {
    throw Error(ErrorCode::kMissingLayer,
                "layer " + std::to_string(layer) + " is not in the frame archives");
  }
  return layer;
}

std::string Key(uint64_t v) { return std::to_string(v); }

}  // namespace

ExperimentReport RunLayerwise(const ExperimentConfig &cfg, const DataSource &source,
                              const Progress &progress) {
  cfg.Validate();
  const std::set<int> available = source.FrameLayers();
  std::vector<int> layers = cfg.layers;
  if (layers.empty()) layers.assign(available.begin(), available.end());
  std::sort(layers.begin(), layers.end());
  for (int l : layers) {
    if (!available.count(l)) {
      throw Error(ErrorCode::kMissingLayer,
                  "layer " + std::to_string(l) + " is not in the frame archives");
    }
  }
  if (layers.empty()) throw Error(ErrorCode::kMissingLayer, "the frame archives hold no layers");

  const ProbeVocab vocab(ProbeCharacters(cfg, source), source.inventory());
  ExperimentReport report = NewReport(cfg, "layerwise");
  const std::string &lang = cfg.source_lang;
  // test CER per seed, per layer
  std::map<uint64_t, std::vector<double>> test_cer;
  for (int layer : layers) {
    const FrameSets data =
        LoadFrames(source, lang, layer, {Split::kTrain, Split::kDev, Split::kTest}, vocab, {});
    for (uint64_t seed : cfg.seeds) {
      FrameProbeModel model(InputDim(data.train), static_cast<int>(vocab.size()), cfg.probe, seed);
      const frameprobe::TrainResult tr = Fit(model, data, vocab, cfg, seed);
      for (Split split : {Split::kDev, Split::kTest}) {
        const std::vector<Example> &set = split == Split::kDev ? data.dev : data.test;
        const frameprobe::EvalResult eval = frameprobe::Evaluate(model, set, vocab);
        report.rows.push_back(
            FrameRow(cfg, "layerwise", layer, seed, lang, lang, split, eval, set,
                     source.inventory(), tr));
      }
      test_cer[seed].push_back(*report.rows.back().cer);
      Notify(progress, "layer " + std::to_string(layer) + " seed " + Key(seed) + ": test CER " +
                           metrics::FormatPercent(*report.rows.back().cer) + "%");
    }
  }

  nlohmann::ordered_json argmin = nlohmann::ordered_json::object();
  std::vector<double> mean(layers.size(), 0.0);
  for (const auto &[seed, curve] : test_cer) {
    const size_t best = static_cast<size_t>(std::min_element(curve.begin(), curve.end()) -
                                            curve.begin());
    argmin[Key(seed)] = layers[best];
    for (size_t i = 0; i < curve.size(); ++i) mean[i] += curve[i] / cfg.seeds.size();
  }
  nlohmann::ordered_json mean_json = nlohmann::ordered_json::object();
  for (size_t i = 0; i < layers.size(); ++i) mean_json[std::to_string(layers[i])] = mean[i];
  const std::optional<size_t> mode = UnimodalMinimum(mean);
  report.summary["layers"] = layers;
  report.summary["argmin_test_cer_layer"] = argmin;
  report.summary["mean_test_cer"] = mean_json;
  report.summary["unimodal_minimum_layer"] =
      mode ? nlohmann::ordered_json(layers[*mode]) : nlohmann::ordered_json(nullptr);
  return report;
}

TransferOutcome RunTransfer(const ExperimentConfig &cfg, const DataSource &source,
                            const Progress &progress) {
  cfg.Validate();
  const int layer = SingleLayer(cfg, source);
  const ProbeVocab vocab(ProbeCharacters(cfg, source), source.inventory());
  const std::string &src = cfg.source_lang;
  const std::string &tgt = cfg.target_lang;
  const std::set<Protocol> wanted(cfg.protocols.begin(), cfg.protocols.end());

  TransferOutcome out;
  out.report = NewReport(cfg, "transfer");
  out.report.notes.push_back("warm-start resets optimizer state before the target stage");
  for (Protocol p : wanted) out.access[p];

  std::vector<dataio::AccessLog *> source_logs, target_train_logs, target_test_logs;
  for (Protocol p : wanted) {
    dataio::AccessLog *log = &out.access[p];
    if (p != Protocol::kScratchTarget) source_logs.push_back(log);
    if (p != Protocol::kZeroShot) target_train_logs.push_back(log);
    target_test_logs.push_back(log);
  }
  FrameSets source_data, target_data;
  if (!source_logs.empty()) {
    source_data = LoadFrames(source, src, layer, {Split::kTrain, Split::kDev}, vocab, source_logs);
  }
  if (!target_train_logs.empty()) {
    target_data =
        LoadFrames(source, tgt, layer, {Split::kTrain, Split::kDev}, vocab, target_train_logs);
  }
  target_data.test = LoadFrames(source, tgt, layer, {Split::kTest}, vocab, target_test_logs).test;

  const int vocab_size = static_cast<int>(vocab.size());
  const int dim = InputDim(target_data.test);
  std::map<Protocol, std::vector<double>> cers;
  for (uint64_t seed : cfg.seeds) {
    std::unique_ptr<FrameProbeModel> source_model;
    frameprobe::TrainResult source_train;
    if (!source_logs.empty()) {
      source_model = std::make_unique<FrameProbeModel>(dim, vocab_size, cfg.probe, seed);
      source_train = Fit(*source_model, source_data, vocab, cfg, seed);
    }
    for (Protocol p : cfg.protocols) {
      FrameProbeModel model(dim, vocab_size, cfg.probe, seed);
      frameprobe::TrainResult tr;
      std::string train_data;
      switch (p) {
        case Protocol::kZeroShot:
          model.CopyFrom(*source_model);
          tr = source_train;
          train_data = src;
          break;
        case Protocol::kScratchTarget:
          tr = Fit(model, target_data, vocab, cfg, seed);
          train_data = tgt;
          break;
        case Protocol::kWarmStart:
          model.CopyFrom(*source_model);
          tr = Fit(model, target_data, vocab, cfg, seed);
          train_data = src + "->" + tgt;
          break;
      }
      const frameprobe::EvalResult eval = frameprobe::Evaluate(model, target_data.test, vocab);
      out.report.rows.push_back(FrameRow(cfg, ProtocolName(p), layer, seed, train_data, tgt,
                                         Split::kTest, eval, target_data.test,
                                         source.inventory(), tr));
      cers[p].push_back(*out.report.rows.back().cer);
      Notify(progress, ProtocolName(p) + " seed " + Key(seed) + ": test CER " +
                           metrics::FormatPercent(*out.report.rows.back().cer) + "%, WER " +
                           metrics::FormatPercent(*out.report.rows.back().wer) + "%");
    }
  }

  nlohmann::ordered_json mean = nlohmann::ordered_json::object();
  for (const auto &[p, values] : cers) {
    double sum = 0.0;
    for (double v : values) sum += v;
    mean[ProtocolName(p)] = sum / values.size();
  }
  out.report.summary["layer"] = layer;
  out.report.summary["mean_test_cer"] = mean;
  if (cers.count(Protocol::kWarmStart) && cers.count(Protocol::kScratchTarget)) {
    int wins = 0;
    for (size_t i = 0; i < cfg.seeds.size(); ++i) {
      wins += cers[Protocol::kWarmStart][i] < cers[Protocol::kScratchTarget][i];
    }
    out.report.summary["warm_start_beats_scratch"] = wins;
  }
  nlohmann::ordered_json touched = nlohmann::ordered_json::object();
  for (const auto &[p, log] : out.access) {
    std::vector<std::string> cells;
    for (const auto &[lang, split] : log.touched()) {
      cells.push_back(lang + "/" + std::string(dataio::SplitName(split)));
    }
    touched[ProtocolName(p)] = cells;
  }
  out.report.summary["data_read"] = touched;
  return out;
}

ExperimentReport RunBocGrid(const ExperimentConfig &cfg, const DataSource &source,
                            const Progress &progress) {
  cfg.Validate();
  const std::set<std::string> available = source.Families();
  for (const std::string &family : cfg.boc_families) {
    if (!available.count(family)) {
      throw Error(ErrorCode::kMissingFamily, "no sentence family '" + family + "'");
    }
  }
  const int layer = SingleLayer(cfg, source);
  const annot::ConceptInventory &inv = source.inventory();
  const int labels = static_cast<int>(inv.size());
  std::vector<std::string> langs = {cfg.source_lang};
  if (cfg.target_lang != cfg.source_lang) langs.push_back(cfg.target_lang);

  // (lang, family) -> examples per split
  std::map<std::pair<std::string, std::string>, std::vector<sentprobe::BocExample>> train, dev,
      test;
  for (const std::string &family : cfg.boc_families) {
    const dataio::Corpus corpus = source.Sentences(family, {});
    for (const std::string &lang : langs) {
      train[{lang, family}] = sentprobe::MakeBocExamples(corpus.Select(lang, Split::kTrain), inv);
      dev[{lang, family}] = sentprobe::MakeBocExamples(corpus.Select(lang, Split::kDev), inv);
      test[{lang, family}] = sentprobe::MakeBocExamples(corpus.Select(lang, Split::kTest), inv);
    }
  }

  const ProbeVocab vocab(ProbeCharacters(cfg, source), inv);
  const FrameSets frames = LoadFrames(source, cfg.source_lang, layer,
                                      {Split::kTrain, Split::kDev, Split::kTest}, vocab, {});
  std::map<std::string, std::vector<Example>> frame_test = {{cfg.source_lang, frames.test}};
  if (cfg.target_lang != cfg.source_lang) {
    frame_test[cfg.target_lang] =
        LoadFrames(source, cfg.target_lang, layer, {Split::kTest}, vocab, {}).test;
  }

  ExperimentReport report = NewReport(cfg, "boc_grid");
  for (uint64_t seed : cfg.seeds) {
    for (const std::string &family : cfg.boc_families) {
      const auto &tr = train[{cfg.source_lang, family}];
      if (tr.empty()) {
        throw Error(ErrorCode::kEmptyDataset, "no " + cfg.source_lang + "/" + family +
                                                  " training embeddings");
      }
      sentprobe::BocConfig bc = cfg.boc;
      bc.seed = seed;
      sentprobe::BocClassifier clf(static_cast<int>(tr.front().x.cols()), labels, bc);
      const sentprobe::BocTrainResult result =
          sentprobe::TrainBoc(clf, tr, dev[{cfg.source_lang, family}], bc);
      for (const std::string &lang : langs) {
        for (const std::string &test_family : cfg.boc_families) {
          ReportRow r;
          r.experiment = cfg.name;
          r.protocol = "sentence";
          r.seed = seed;
          r.train_data = cfg.source_lang + "/" + family;
          r.test_data = lang + "/" + test_family;
          r.split = dataio::SplitName(Split::kTest);
          r.f1 = sentprobe::EvaluateBoc(clf, test[{lang, test_family}], bc.threshold).f1();
          r.best_epoch = result.best_epoch;
          r.epochs = static_cast<int>(result.log.size());
          report.rows.push_back(r);
          Notify(progress, "sentence seed " + Key(seed) + " " + r.train_data + " -> " +
                               r.test_data + ": F1 " + metrics::FormatPercent(*r.f1) + "%");
        }
      }
    }

    FrameProbeModel model(InputDim(frames.train), static_cast<int>(vocab.size()), cfg.probe, seed);
    const frameprobe::TrainResult tr = Fit(model, frames, vocab, cfg, seed);
    for (const std::string &lang : langs) {
      const std::vector<Example> &set = frame_test[lang];
      const frameprobe::EvalResult eval = frameprobe::Evaluate(model, set, vocab);
      report.rows.push_back(FrameRow(cfg, "frame-wise", layer, seed, cfg.source_lang + "/frames",
                                     lang + "/frames", Split::kTest, eval, set, inv, tr));
      Notify(progress, "frame-wise seed " + Key(seed) + " -> " + lang + ": F1 " +
                           metrics::FormatPercent(*report.rows.back().f1) + "%");
    }
  }
  report.summary["layer"] = layer;
  report.summary["languages"] = langs;
  report.summary["families"] = cfg.boc_families;
  return report;
}

}  // namespace sluprobe::harness
