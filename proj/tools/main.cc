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

// Command-line front end: scoring, data checks, synthetic corpora, probe
// training and the experiment drivers.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_util.h"
#include "json.hpp"
#include "sluprobe/annot/concept.h"
#include "sluprobe/annot/tagged.h"
#include "sluprobe/common/error.h"
#include "sluprobe/common/text.h"
#include "sluprobe/common/version.h"
#include "sluprobe/dataio/archive.h"
#include "sluprobe/dataio/corpus.h"
#include "sluprobe/dataio/manifest.h"
#include "sluprobe/dataio/synth.h"
#include "sluprobe/frameprobe/model.h"
#include "sluprobe/frameprobe/train.h"
#include "sluprobe/frameprobe/vocab.h"
#include "sluprobe/harness/config.h"
#include "sluprobe/harness/experiments.h"
#include "sluprobe/harness/report.h"
#include "sluprobe/metrics/scoring_report.h"
#include "sluprobe/sentprobe/boc.h"
#include "sluprobe/sentprobe/pooler.h"

namespace sluprobe::cli {
namespace {

namespace fs = std::filesystem;
using dataio::Split;

void Log(const std::string &line) { std::cerr << line << std::endl; }

std::string OutPath(const std::string &dir, const std::string &name) {
  return (fs::path(dir) / name).string();
}

void MakeDir(const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create '" + dir + "': " + ec.message());
}

// ---- score ----------------------------------------------------------------

struct ScoreArgs {
  std::string ref, hyp, inventory, metric = "all", csv, json;
};

int RunScore(const ScoreArgs &a) {
  const annot::ConceptInventory inv = annot::ConceptInventory::Load(a.inventory);
  const std::vector<TextLine> refs = ReadTextLines(a.ref);
  std::map<std::string, const TextLine *> hyp_by_id;
  const std::vector<TextLine> hyps = ReadTextLines(a.hyp);
  for (const TextLine &h : hyps) {
    if (!hyp_by_id.emplace(h.id, &h).second) {
      throw Error(ErrorCode::kDuplicateId, "hypothesis id '" + h.id + "' appears twice");
    }
  }
  if (hyps.size() != refs.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(refs.size()) + " references but " +
                                                std::to_string(hyps.size()) + " hypotheses");
  }
  std::vector<std::string> ids;
  std::vector<annot::SemSegment> ref_segs, hyp_segs;
  size_t repaired = 0;
  for (const TextLine &r : refs) {
    auto it = hyp_by_id.find(r.id);
    if (it == hyp_by_id.end()) {
      throw Error(ErrorCode::kLengthMismatch, "no hypothesis for id '" + r.id + "'");
    }
    try {
      ref_segs.push_back(annot::ParseStrict(r.text, inv));
    } catch (const Error &e) {
      throw Error(e.code(), a.ref + ":" + std::to_string(r.line) + ": " + e.what());
    }
    annot::ParseResult hyp = annot::ParseTagged(it->second->text, inv, annot::ParseMode::kLenient);
    repaired += !hyp.diagnostics.empty();
    hyp_segs.push_back(std::move(hyp.segment));
    ids.push_back(r.id);
  }
  if (repaired > 0) Log(std::to_string(repaired) + " hypotheses needed tag repair");

  const metrics::ScoringReport report = metrics::ScoreSegments(ids, ref_segs, hyp_segs, inv);
  std::vector<metrics::Metric> rate_metrics;
  for (metrics::Metric m : metrics::kAllRateMetrics) {
    if (a.metric == "all" || a.metric == metrics::MetricName(m)) rate_metrics.push_back(m);
  }
  std::printf("segments %zu\n", report.num_segments);
  for (metrics::Metric m : rate_metrics) {
    const metrics::ErrorRate rate = report.corpus.Rate(m);
    std::printf("%-5s %s%s\n", std::string(metrics::MetricName(m)).c_str(),
                metrics::FormatPercent(rate.value).c_str(), rate.undefined ? " (undefined)" : "");
  }
  if (a.metric == "all" || a.metric == "f1") {
    std::printf("f1    %s (P %s, R %s)\n", metrics::FormatPercent(report.f1.f1()).c_str(),
                metrics::FormatPercent(report.f1.precision()).c_str(),
                metrics::FormatPercent(report.f1.recall()).c_str());
  }
  if (!a.csv.empty()) WriteFileOrThrow(a.csv, metrics::ScoringCsv(report, rate_metrics));
  if (!a.json.empty()) WriteFileOrThrow(a.json, metrics::ScoringSummary(report).dump(2) + "\n");
  return 0;
}

// ---- parse-check ------------------------------------------------------------

struct ParseCheckArgs {
  std::string in, inventory;
  bool strict = false;
};

int RunParseCheck(const ParseCheckArgs &a) {
  const annot::ConceptInventory inv = annot::ConceptInventory::Load(a.inventory);
  size_t problems = 0;
  size_t count = 0;
  for (const TextLine &t : ReadTextLines(a.in)) {
    ++count;
    const annot::ParseResult r = annot::ParseTagged(t.text, inv, annot::ParseMode::kLenient);
    for (const annot::ParseDiagnostic &d : r.diagnostics) {
      ++problems;
      std::printf("%s:%zu: %s at byte %zu: %s\n", t.id.c_str(), t.line,
                  std::string(annot::DiagnosticKindName(d.kind)).c_str(), d.offset,
                  d.detail.c_str());
    }
  }

  const bool manifest = a.in.size() >= 6 && a.in.compare(a.in.size() - 6, 6, ".jsonl") == 0;
  if (manifest) {
    // Every entry must have its record in a readable archive.
    const std::vector<dataio::ManifestEntry> entries = dataio::LoadManifest(a.in);
    std::map<std::string, std::set<std::pair<std::string, int>>> have;
    for (const dataio::ManifestEntry &e : entries) {
      if (have.count(e.archive)) continue;
      const std::string path = RelativeTo(a.in, e.archive);
      auto &keys = have[e.archive];
      for (const dataio::EmbeddingRecord &r : dataio::LoadArchive(path)) {
        keys.emplace(r.id, r.layer);
      }
    }
    for (const dataio::ManifestEntry &e : entries) {
      if (!have[e.archive].count({e.id, e.layer})) {
        ++problems;
        std::printf("%s: missing embedding at layer %d in %s\n", e.id.c_str(), e.layer,
                    e.archive.c_str());
      }
    }
  }
  std::printf("checked %zu utterances, %zu diagnostics\n", count, problems);
  if (a.strict && problems > 0) {
    throw Error(ErrorCode::kParseError, std::to_string(problems) + " diagnostics in strict mode");
  }
  return 0;
}

// ---- synth ------------------------------------------------------------------

int RunSynth(const std::string &spec_path, const std::string &out) {
  dataio::SynthSpec spec;
  if (!spec_path.empty()) spec = dataio::SynthSpec::FromJson(ReadJsonFile(spec_path));
  const dataio::SynthCorpus corpus = dataio::GenerateSyntheticCorpus(spec);
  MakeDir(out);
  dataio::WriteSyntheticCorpus(corpus, out);
  std::printf("wrote %zu frame-level utterances to %s\n", corpus.frame_manifest.size(),
              out.c_str());
  return 0;
}

// ---- train-frame-probe --------------------------------------------------------

std::string FormatRates(const frameprobe::EvalResult &r) {
  std::string out;
  for (metrics::Metric m : metrics::kAllRateMetrics) {
    out += std::string(metrics::MetricName(m)) + " " + metrics::FormatPercent(r.Rate(m)) + "%  ";
  }
  return out + "f1 " + metrics::FormatPercent(r.f1.f1()) + "%";
}

nlohmann::ordered_json RatesJson(const frameprobe::EvalResult &r) {
  nlohmann::ordered_json j;
  for (metrics::Metric m : metrics::kAllRateMetrics) {
    j[std::string(metrics::MetricName(m))] = 100.0 * r.Rate(m);
  }
  j["f1"] = 100.0 * r.f1.f1();
  return j;
}

// Utterances of `split`, restricted to `lang` when it is set.
std::vector<const dataio::Utterance *> Pick(const dataio::Corpus &corpus, const std::string &lang,
                                            Split split) {
  if (!lang.empty()) return corpus.Select(lang, split);
  std::vector<const dataio::Utterance *> out;
  for (const std::string &l : corpus.Languages()) {
    for (const dataio::Utterance *u : corpus.Select(l, split)) out.push_back(u);
  }
  return out;
}

int RunTrainFrameProbe(const std::string &manifest, const std::string &layer_text,
                       const std::string &config_path, const std::string &out) {
  const nlohmann::json cfg = ReadJsonFile(config_path);
  std::string inventory_path, lang, characters;
  frameprobe::ProbeArch arch;
  frameprobe::TrainConfig train;
  uint64_t seed = 1;
  try {
    for (const auto &[key, value] : cfg.items()) {
      if (key == "inventory") inventory_path = RelativeTo(config_path, value.get<std::string>());
      else if (key == "lang") lang = value.get<std::string>();
      else if (key == "characters") characters = value.get<std::string>();
      else if (key == "probe") arch = frameprobe::ProbeArch::FromJson(value);
      else if (key == "train") train = frameprobe::TrainConfig::FromJson(value);
      else if (key == "seed") seed = value.get<uint64_t>();
      else throw Error(ErrorCode::kInvalidConfig, "unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("bad probe config: ") + e.what());
  }
  if (inventory_path.empty()) throw Error(ErrorCode::kInvalidConfig, "config needs 'inventory'");
  const annot::ConceptInventory inv = annot::ConceptInventory::Load(inventory_path);

  dataio::LoadOptions opts;
  opts.layer = dataio::ParseLayerSelector(layer_text);
  if (!lang.empty()) opts.langs = {lang};
  const dataio::Corpus corpus = dataio::LoadCorpus(manifest, inv, opts);

  std::set<std::string> chars;
  if (!characters.empty()) {
    for (const std::string &ch : Utf8Characters(characters)) chars.insert(ch);
  } else {
    std::vector<annot::SemSegment> segs;
    for (const dataio::Utterance &u : corpus.utterances()) segs.push_back(u.segment);
    chars = frameprobe::ProbeVocab::CharactersOf(segs);
  }
  const frameprobe::ProbeVocab vocab(chars, inv);
  const auto train_set = frameprobe::MakeExamples(Pick(corpus, lang, Split::kTrain), vocab);
  const auto dev_set = frameprobe::MakeExamples(Pick(corpus, lang, Split::kDev), vocab);
  const auto test_set = frameprobe::MakeExamples(Pick(corpus, lang, Split::kTest), vocab);
  if (train_set.empty()) throw Error(ErrorCode::kEmptyDataset, "no training utterances");

  train.seed = seed;
  frameprobe::FrameProbeModel model(static_cast<int>(train_set.front().frames.cols()),
                                    static_cast<int>(vocab.size()), arch, seed);
  const frameprobe::TrainResult result =
      frameprobe::TrainProbe(model, train_set, dev_set, vocab, train,
                             [](const frameprobe::EpochLog &e) {
                               Log("epoch " + std::to_string(e.epoch) + " loss " +
                                   std::to_string(e.loss) + " dev CER " +
                                   metrics::FormatPercent(e.cer) + "%");
                             });
  if (result.impossible > 0) {
    Log(std::to_string(result.impossible) + " training utterances were too short for their "
        "targets and were skipped");
  }

  MakeDir(out);
  model.Save(OutPath(out, "model.snnw"));
  WriteFileOrThrow(OutPath(out, "vocab.txt"), vocab.ToText());
  WriteFileOrThrow(OutPath(out, "train_log.csv"), frameprobe::TrainingLogCsv(result.log));
  nlohmann::ordered_json summary;
  summary["toolkit_version"] = kToolkitVersion;
  summary["input_dim"] = model.input_dim();
  summary["layer"] = *opts.layer;
  summary["probe"] = arch.ToJson();
  summary["train"] = train.ToJson();
  summary["best_epoch"] = result.best_epoch;
  const frameprobe::EvalResult dev_eval = frameprobe::Evaluate(model, dev_set, vocab);
  summary["dev"] = RatesJson(dev_eval);
  std::printf("dev   %s\n", FormatRates(dev_eval).c_str());
  if (!test_set.empty()) {
    const frameprobe::EvalResult test_eval = frameprobe::Evaluate(model, test_set, vocab);
    summary["test"] = RatesJson(test_eval);
    std::printf("test  %s\n", FormatRates(test_eval).c_str());
    std::string hyps;
    for (size_t i = 0; i < test_set.size(); ++i) {
      hyps += test_set[i].id + "\t" + annot::RenderTagged(test_eval.hypotheses[i]) + "\n";
    }
    WriteFileOrThrow(OutPath(out, "test_hypotheses.txt"), hyps);
  }
  WriteFileOrThrow(OutPath(out, "summary.json"), summary.dump(2) + "\n");
  return 0;
}

// ---- experiments ------------------------------------------------------------

int RunExperiment(const std::string &config_path, const std::string &kind,
                  const std::vector<std::string> &protocols) {
  harness::ExperimentConfig cfg = harness::ExperimentConfig::Load(config_path);
  if (!protocols.empty()) {
    cfg.protocols.clear();
    for (const std::string &p : protocols) cfg.protocols.push_back(harness::ParseProtocol(p));
  }
  const auto source = harness::OpenDataSource(cfg.data);
  harness::ExperimentReport report;
  if (kind == "layerwise") {
    report = harness::RunLayerwise(cfg, *source, Log);
  } else if (kind == "transfer") {
    report = harness::RunTransfer(cfg, *source, Log).report;
  } else {
    report = harness::RunBocGrid(cfg, *source, Log);
  }
  const std::string dir = cfg.output_dir.empty() ? "." : cfg.output_dir;
  harness::EmitReport(report, dir, kind);
  std::printf("%s\n", report.summary.dump(2).c_str());
  std::printf("report: %s\n", OutPath(dir, kind + ".csv").c_str());
  return 0;
}

// ---- train-boc / eval-boc -----------------------------------------------------

struct BocCliConfig {
  std::string inventory, manifest, lang;
  std::string eval_manifest, eval_lang;
  Split eval_split = Split::kTest;
  sentprobe::BocConfig boc;
  std::string model_dir;
};

BocCliConfig LoadBocConfig(const std::string &path) {
  const nlohmann::json j = ReadJsonFile(path);
  BocCliConfig c;
  try {
    for (const auto &[key, value] : j.items()) {
      if (key == "inventory") c.inventory = RelativeTo(path, value.get<std::string>());
      else if (key == "manifest") c.manifest = RelativeTo(path, value.get<std::string>());
      else if (key == "lang") c.lang = value.get<std::string>();
      else if (key == "eval_manifest") c.eval_manifest = RelativeTo(path, value.get<std::string>());
      else if (key == "eval_lang") c.eval_lang = value.get<std::string>();
      else if (key == "eval_split") c.eval_split = dataio::ParseSplit(value.get<std::string>());
      else if (key == "boc") c.boc = sentprobe::BocConfig::FromJson(value);
      else if (key == "model_dir") c.model_dir = RelativeTo(path, value.get<std::string>());
      else throw Error(ErrorCode::kInvalidConfig, "unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("bad classifier config: ") + e.what());
  }
  if (c.inventory.empty() || c.manifest.empty() || c.model_dir.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "config needs inventory, manifest and model_dir");
  }
  if (c.eval_manifest.empty()) c.eval_manifest = c.manifest;
  if (c.eval_lang.empty()) c.eval_lang = c.lang;
  return c;
}

int RunTrainBoc(const std::string &config_path) {
  const BocCliConfig c = LoadBocConfig(config_path);
  const annot::ConceptInventory inv = annot::ConceptInventory::Load(c.inventory);
  dataio::LoadOptions opts;
  if (!c.lang.empty()) opts.langs = {c.lang};
  const dataio::Corpus corpus = dataio::LoadCorpus(c.manifest, inv, opts);
  const auto train = sentprobe::MakeBocExamples(Pick(corpus, c.lang, Split::kTrain), inv);
  const auto dev = sentprobe::MakeBocExamples(Pick(corpus, c.lang, Split::kDev), inv);
  if (train.empty()) throw Error(ErrorCode::kEmptyDataset, "no training embeddings");
  const int dim = static_cast<int>(train.front().x.cols());
  sentprobe::BocClassifier clf(dim, static_cast<int>(inv.size()), c.boc);
  const sentprobe::BocTrainResult result = sentprobe::TrainBoc(clf, train, dev, c.boc);

  MakeDir(c.model_dir);
  clf.Save(OutPath(c.model_dir, "classifier.snnw"));
  nlohmann::ordered_json meta;
  meta["toolkit_version"] = kToolkitVersion;
  meta["input_dim"] = dim;
  meta["labels"] = inv.size();
  meta["boc"] = c.boc.ToJson();
  meta["best_epoch"] = result.best_epoch;
  meta["best_dev_f1"] = 100.0 * result.best_dev_f1;
  WriteFileOrThrow(OutPath(c.model_dir, "classifier.json"), meta.dump(2) + "\n");
  std::string log = "epoch,loss,dev_f1\n";
  char buf[64];
  for (const sentprobe::BocEpoch &e : result.log) {
    std::snprintf(buf, sizeof(buf), "%.6f", e.loss);
    log += std::to_string(e.epoch) + "," + buf + "," + metrics::FormatPercent(e.dev_f1) + "\n";
  }
  WriteFileOrThrow(OutPath(c.model_dir, "train_log.csv"), log);
  std::printf("best dev F1 %s%% at epoch %d\n", metrics::FormatPercent(result.best_dev_f1).c_str(),
              result.best_epoch);
  return 0;
}

int RunEvalBoc(const std::string &config_path) {
  const BocCliConfig c = LoadBocConfig(config_path);
  const annot::ConceptInventory inv = annot::ConceptInventory::Load(c.inventory);
  const nlohmann::json meta = ReadJsonFile(OutPath(c.model_dir, "classifier.json"));
  sentprobe::BocConfig boc;
  int dim = 0;
  try {
    nlohmann::json settable = meta.at("boc");
    for (const char *k : {"optimizer", "selection", "input_normalization"}) settable.erase(k);
    boc = sentprobe::BocConfig::FromJson(settable);
    dim = meta.at("input_dim").get<int>();
    if (meta.at("labels").get<size_t>() != inv.size()) {
      throw Error(ErrorCode::kShapeMismatch, "classifier was trained for a different inventory");
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParseError, std::string("bad classifier.json: ") + e.what());
  }
  sentprobe::BocClassifier clf(dim, static_cast<int>(inv.size()), boc);
  clf.Load(OutPath(c.model_dir, "classifier.snnw"));

  dataio::LoadOptions opts;
  if (!c.eval_lang.empty()) opts.langs = {c.eval_lang};
  opts.splits = {c.eval_split};
  const dataio::Corpus corpus = dataio::LoadCorpus(c.eval_manifest, inv, opts);
  const auto examples = sentprobe::MakeBocExamples(Pick(corpus, c.eval_lang, c.eval_split), inv);
  const metrics::MicroF1Counts f1 = sentprobe::EvaluateBoc(clf, examples, boc.threshold);
  const std::string name = "predictions_" + (c.eval_lang.empty() ? "all" : c.eval_lang) + "_" +
                           std::string(dataio::SplitName(c.eval_split)) + ".jsonl";
  WriteFileOrThrow(OutPath(c.model_dir, name),
                   sentprobe::PredictionJsonl(clf, examples, boc.threshold));
  std::printf("utterances %zu\nf1 %s (P %s, R %s)\n", examples.size(),
              metrics::FormatPercent(f1.f1()).c_str(), metrics::FormatPercent(f1.precision()).c_str(),
              metrics::FormatPercent(f1.recall()).c_str());
  return 0;
}

// ---- pool-distill -------------------------------------------------------------

int RunPoolDistill(const std::string &config_path) {
  const nlohmann::json j = ReadJsonFile(config_path);
  std::vector<dataio::DistillPair> pairs;
  double dev_fraction = 0.25;
  sentprobe::DistillConfig dc;
  uint64_t seed = 1;
  std::string out;
  try {
    for (const auto &[key, value] : j.items()) {
      if (key == "data") {
        if (value.contains("synth")) {
          pairs = dataio::GenerateDistillPairs(DistillSpecFromJson(value.at("synth")));
        } else {
          const auto frames =
              dataio::LoadArchive(RelativeTo(config_path, value.at("frames").get<std::string>()));
          const auto targets =
              dataio::LoadArchive(RelativeTo(config_path, value.at("targets").get<std::string>()));
          std::map<std::string, const dataio::EmbeddingRecord *> by_id;
          for (const auto &t : targets) by_id[t.id] = &t;
          for (const auto &f : frames) {
            auto it = by_id.find(f.id);
            if (it == by_id.end()) {
              throw Error(ErrorCode::kMissingEmbedding, "no target for '" + f.id + "'");
            }
            pairs.push_back({f, *it->second});
          }
        }
      } else if (key == "dev_fraction") {
        dev_fraction = value.get<double>();
      } else if (key == "distill") {
        dc = sentprobe::DistillConfig::FromJson(value);
      } else if (key == "seed") {
        seed = value.get<uint64_t>();
      } else if (key == "out") {
        out = RelativeTo(config_path, value.get<std::string>());
      } else {
        throw Error(ErrorCode::kInvalidConfig, "unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("bad distillation config: ") + e.what());
  }
  if (!(dev_fraction > 0.0 && dev_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "dev_fraction must be in (0, 1)");
  }
  const size_t dev_count = static_cast<size_t>(dev_fraction * pairs.size());
  if (pairs.size() < 2 || dev_count == 0 || dev_count == pairs.size()) {
    throw Error(ErrorCode::kEmptyDataset, "not enough pairs for a train/dev split");
  }
  const std::vector<dataio::DistillPair> train(pairs.begin(), pairs.end() - dev_count);
  const std::vector<dataio::DistillPair> dev(pairs.end() - dev_count, pairs.end());
  sentprobe::AttentivePooler pooler(static_cast<int>(train.front().frames.dim),
                                    static_cast<int>(train.front().target.dim), seed);
  const double before = sentprobe::MeanCosineLoss(pooler, dev);
  const sentprobe::DistillResult r = sentprobe::DistillPooler(pooler, train, dev, dc);
  std::printf("dev cosine loss %.6f -> %.6f (epoch %d)\n", before, r.best_dev_loss, r.best_epoch);
  if (!out.empty()) {
    MakeDir(out);
    pooler.Save(OutPath(out, "pooler.snnw"));
    std::string log = "epoch,train_loss,dev_loss\n";
    char buf[96];
    for (const sentprobe::DistillEpoch &e : r.log) {
      std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f\n", e.epoch, e.train_loss, e.dev_loss);
      log += buf;
    }
    WriteFileOrThrow(OutPath(out, "distill_log.csv"), log);
  }
  return 0;
}

}  // namespace
}  // namespace sluprobe::cli

int main(int argc, char **argv) {
  using namespace sluprobe::cli;
  CLI::App app{"Probing and scoring toolkit for spoken language understanding"};
  app.set_version_flag("--version", std::string(sluprobe::kToolkitVersion));
  app.require_subcommand(1);
  std::function<int()> action;

  ScoreArgs score;
  auto *sc = app.add_subcommand("score", "Score hypotheses against references");
  sc->add_option("--ref", score.ref, "Reference file")->required();
  sc->add_option("--hyp", score.hyp, "Hypothesis file")->required();
  sc->add_option("--inventory", score.inventory, "Concept inventory")->required();
  sc->add_option("--metric", score.metric, "Metric to report")
      ->check(CLI::IsMember({"all", "cher", "wer", "cer", "cver", "f1"}));
  sc->add_option("--csv", score.csv, "Write per-segment CSV here");
  sc->add_option("--json", score.json, "Write the corpus summary JSON here");
  sc->callback([&] { action = [&] { return RunScore(score); }; });

  ParseCheckArgs pc;
  auto *pcc = app.add_subcommand("parse-check", "Check tagged text or a manifest");
  pcc->add_option("--in", pc.in, "Text file or .jsonl manifest")->required();
  pcc->add_option("--inventory", pc.inventory, "Concept inventory")->required();
  pcc->add_flag("--strict", pc.strict, "Fail on any diagnostic");
  pcc->callback([&] { action = [&] { return RunParseCheck(pc); }; });

  std::string spec_path, synth_out;
  auto *sy = app.add_subcommand("synth", "Write a synthetic corpus");
  sy->add_option("--spec", spec_path, "Synthetic spec JSON (defaults when omitted)");
  sy->add_option("--out", synth_out, "Output directory")->required();
  sy->callback([&] { action = [&] { return RunSynth(spec_path, synth_out); }; });

  std::string manifest, layer, probe_config, probe_out;
  auto *tf = app.add_subcommand("train-frame-probe", "Train a frame-level probe");
  tf->add_option("--manifest", manifest, "Frame-level manifest")->required();
  tf->add_option("--layer", layer, "Layer index or layer=N")->required();
  tf->add_option("--config", probe_config, "Probe config JSON")->required();
  tf->add_option("--out", probe_out, "Output directory")->required();
  tf->callback([&] {
    action = [&] { return RunTrainFrameProbe(manifest, layer, probe_config, probe_out); };
  });

  std::string experiment_config;
  std::vector<std::string> protocols;
  auto *lw = app.add_subcommand("layerwise", "Layer-wise probing experiment");
  lw->add_option("--config", experiment_config, "Experiment config JSON")->required();
  lw->callback([&] { action = [&] { return RunExperiment(experiment_config, "layerwise", {}); }; });
  auto *tr = app.add_subcommand("transfer", "Cross-language transfer experiment");
  tr->add_option("--config", experiment_config, "Experiment config JSON")->required();
  tr->add_option("--protocol", protocols, "zero-shot, scratch or warm-start (repeatable)")
      ->check(CLI::IsMember({"zero-shot", "scratch", "warm-start"}));
  tr->callback(
      [&] { action = [&] { return RunExperiment(experiment_config, "transfer", protocols); }; });
  auto *bg = app.add_subcommand("boc-grid", "Sentence-level bag-of-concepts grid");
  bg->add_option("--config", experiment_config, "Experiment config JSON")->required();
  bg->callback([&] { action = [&] { return RunExperiment(experiment_config, "boc_grid", {}); }; });

  std::string boc_config;
  auto *tb = app.add_subcommand("train-boc", "Train a bag-of-concepts classifier");
  tb->add_option("--config", boc_config, "Classifier config JSON")->required();
  tb->callback([&] { action = [&] { return RunTrainBoc(boc_config); }; });
  auto *eb = app.add_subcommand("eval-boc", "Evaluate a bag-of-concepts classifier");
  eb->add_option("--config", boc_config, "Classifier config JSON")->required();
  eb->callback([&] { action = [&] { return RunEvalBoc(boc_config); }; });

  std::string distill_config;
  auto *pd = app.add_subcommand("pool-distill", "Distill an attentive pooler toward targets");
  pd->add_option("--config", distill_config, "Distillation config JSON")->required();
  pd->callback([&] { action = [&] { return RunPoolDistill(distill_config); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const sluprobe::Error &e) {
    std::cerr << "error [" << sluprobe::ErrorCodeName(e.code()) << "]: " << e.what() << std::endl;
    return sluprobe::IsValidationError(e.code()) ? 2 : 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
