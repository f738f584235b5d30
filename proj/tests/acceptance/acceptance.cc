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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Optional arguments select criteria by
// name.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sluprobe/annot/tagged.h"
#include "sluprobe/common/error.h"
#include "sluprobe/dataio/archive.h"
#include "sluprobe/dataio/synth.h"
#include "sluprobe/frameprobe/train.h"
#include "sluprobe/harness/config.h"
#include "sluprobe/harness/experiments.h"
#include "sluprobe/metrics/align.h"
#include "sluprobe/metrics/rates.h"
#include "sluprobe/nnet/ctc.h"
#include "sluprobe/nnet/losses.h"
#include "sluprobe/nnet/lstm.h"
#include "sluprobe/nnet/ops.h"
#include "sluprobe/sentprobe/normalize.h"
#include "sluprobe/sentprobe/pooler.h"
#include "testing/fixtures.h"
#include "testing/gradcheck.h"
#include "testing/oracles.h"

namespace sluprobe::acceptance {
namespace {

using Clock = std::chrono::steady_clock;
using metrics::Metric;
using nnet::Rng;
using nnet::Tensor;

// Pinned thresholds.
constexpr int kMetricCases = 1000;
constexpr size_t kMaxTokens = 8;
constexpr double kMetricSeconds = 10.0;
constexpr double kCtcRelTol = 1e-10;
constexpr int kGradCases = 100;
constexpr double kGradTol = 1e-4;
constexpr int kNormCases = 10000;
constexpr int kNormDim = 768;
constexpr double kNormTol = 1e-9;
constexpr double kExactTol = 1e-12;
constexpr int kProbeTrain = 1000;
constexpr int kProbeWidth = 64;
constexpr double kProbeDevCer = 0.10;
constexpr int kProbeMaxEpochs = 30;
constexpr double kProbeSeconds = 600.0;
constexpr size_t kSeeds = 10;
constexpr int kLayerwiseArgminSeeds = 9;
constexpr int kInformativeLayer = 3;
constexpr size_t kLayers = 5;
constexpr int kTransferWinSeeds = 8;
constexpr double kZeroShotMinWer = 0.80;
constexpr double kSentenceMinF1 = 0.90;
constexpr double kSentenceNoise = 0.05;
constexpr int kGridWinSeeds = 8;
constexpr int kArchiveRecords = 1000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char *format, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

void Progress(const std::string &line) { std::cerr << "  " << line << std::endl; }

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---- metric oracle ---------------------------------------------------------

// A generated utterance together with its expected tokenizations, built
// from the generator's own pieces rather than from the library.
struct OracleCase {
  annot::SemSegment segment;
  std::map<Metric, metrics::TokenList> tokens;
};

OracleCase RandomCase(std::mt19937_64 &rng, Metric metric) {
  static const std::vector<std::string> kWords = {"a", "b", "ab", "ba", "c"};
  static const std::vector<std::string> kLabels = {"city", "date", "price"};
  // Small symbol sets per metric so matches are frequent.
  const size_t words = metric == Metric::kCVER ? 2 : kWords.size();
  const size_t labels = metric == Metric::kCVER ? 2 : kLabels.size();
  std::uniform_int_distribution<int> chunks(0, metric == Metric::kChER ? 3 : 6);
  std::uniform_int_distribution<size_t> word(0, words - 1), label(0, labels - 1);
  std::uniform_int_distribution<int> phrase(1, 2);
  std::bernoulli_distribution labeled(0.5);

  OracleCase c;
  std::vector<std::string> all_words;
  for (int i = chunks(rng); i > 0; --i) {
    const bool is_labeled = labeled(rng);
    const int n = is_labeled ? 1 : phrase(rng);
    std::string text;
    for (int k = 0; k < n; ++k) {
      const std::string &w = kWords[word(rng)];
      text += (k ? " " : "") + w;
      all_words.push_back(w);
    }
    if (is_labeled) {
      const std::string &l = kLabels[label(rng)];
      c.segment.Append(text, annot::ConceptLabel::Parse(l));
      c.tokens[Metric::kCER].push_back(l);
      c.tokens[Metric::kCVER].push_back(l + "=" + text);
    } else {
      c.segment.Append(text);
    }
  }
  c.tokens[Metric::kWER] = all_words;
  std::string joined;
  for (const std::string &w : all_words) joined += (joined.empty() ? "" : " ") + w;
  for (char ch : joined) c.tokens[Metric::kChER].push_back(std::string(1, ch));
  return c;
}

Outcome MetricOracle() {
  const Clock::time_point start = Clock::now();
  std::mt19937_64 rng(20260101);
  size_t mismatches = 0, compared = 0;
  std::map<Metric, size_t> oracle_errors, oracle_ref;
  std::map<Metric, std::vector<annot::SemSegment>> refs, hyps;

  for (int i = 0; i < kMetricCases; ++i) {
    // Plain token alignment.
    {
      std::uniform_int_distribution<size_t> len(0, kMaxTokens);
      std::uniform_int_distribution<int> alphabet(1, 5);
      std::uniform_int_distribution<int> sym(0, alphabet(rng) - 1);
      metrics::TokenList a, b;
      for (size_t k = len(rng); k > 0; --k) a.push_back(std::to_string(sym(rng)));
      for (size_t k = len(rng); k > 0; --k) b.push_back(std::to_string(sym(rng)));
      const metrics::AlignmentResult r = metrics::Align(a, b);
      const size_t oracle = testing::BruteEditDistance(a, b);
      mismatches += r.cost() != oracle;
      mismatches += metrics::CountsOf(r).errors() != oracle;
      ++compared;
    }
    // Each rate on segments whose token lists fit the bound.
    for (Metric m : metrics::kAllRateMetrics) {
      OracleCase ref, hyp;
      do {
        ref = RandomCase(rng, m);
        hyp = RandomCase(rng, m);
      } while (ref.tokens[m].size() > kMaxTokens || hyp.tokens[m].size() > kMaxTokens);
      const size_t oracle = testing::BruteEditDistance(ref.tokens[m], hyp.tokens[m]);
      const size_t ref_len = ref.tokens[m].size();
      const metrics::ErrorCounts counts =
          metrics::CountsOf(metrics::AlignSegments(m, ref.segment, hyp.segment));
      const metrics::ErrorRate rate = metrics::RateOf(counts);
      bool ok = counts.errors() == oracle && counts.ref_len == ref_len;
      if (ref_len > 0) {
        ok = ok && !rate.undefined && rate.value == static_cast<double>(oracle) / ref_len;
      } else {
        ok = ok && rate.undefined == (oracle > 0) && (oracle > 0 || rate.value == 0.0);
      }
      mismatches += !ok;
      ++compared;
      oracle_errors[m] += oracle;
      oracle_ref[m] += ref_len;
      refs[m].push_back(ref.segment);
      hyps[m].push_back(hyp.segment);
    }
  }
  // Corpus rates pool counts.
  for (Metric m : metrics::kAllRateMetrics) {
    const metrics::CorpusCounts corpus = metrics::ScoreCorpus(refs[m], hyps[m]);
    const double expected = static_cast<double>(oracle_errors[m]) / oracle_ref[m];
    mismatches += corpus.Rate(m).value != expected;
    ++compared;
  }
  const double secs = Seconds(start);
  return {mismatches == 0 && secs < kMetricSeconds,
          std::to_string(compared) + " comparisons, " + std::to_string(mismatches) +
              " mismatches, " + Fmt("%.2f s", secs)};
}

// ---- CTC and gradients -----------------------------------------------------

struct GradFamily {
  const char *name;
  std::function<double(Rng &, int)> run;
};

std::vector<GradFamily> GradFamilies() {
  using nnet::Tape;
  using nnet::Var;
  auto normal = [](Rng &rng, Eigen::Index r, Eigen::Index c) {
    return nnet::NormalTensor(r, c, 1.0, rng);
  };
  return {
      {"ctc",
       [=](Rng &rng, int) {
         const int frames = std::uniform_int_distribution<int>(2, 6)(rng);
         const int vocab = std::uniform_int_distribution<int>(2, 4)(rng);
         std::uniform_int_distribution<int> sym(1, vocab - 1);
         std::vector<int> target(std::uniform_int_distribution<int>(1, 3)(rng));
         for (int &s : target) s = sym(rng);
         const Tensor lp = normal(rng, frames, vocab);
         const nnet::CtcResult r = nnet::CtcLossAndGrad(lp, target);
         if (r.impossible) return 0.0;
         const Tensor numeric = testing::NumericGradient(
             [&](const Tensor &x) { return nnet::CtcLossAndGrad(x, target).loss; }, lp);
         return testing::RelativeError(r.grad, numeric);
       }},
      {"linear",
       [=](Rng &rng, int) {
         auto layer = std::make_shared<nnet::Linear>("fc", 4, 3, rng);
         layer->bias.value = normal(rng, 1, 3);
         const double input = testing::MaxGradientError(
             [layer](Tape &tape, const std::vector<Var> &v) { return layer->Forward(tape, v[0]); },
             {normal(rng, 5, 4)}, rng);
         const Tensor x = normal(rng, 5, 4), w = normal(rng, 5, 3);
         const double params = testing::MaxParameterGradientError(
             [&](Tape &tape) { return nnet::WeightedSum(layer->Forward(tape, tape.Constant(x)), w); },
             {&layer->weight, &layer->bias});
         return std::max(input, params);
       }},
      {"leaky_relu",
       [=](Rng &rng, int) {
         return testing::MaxGradientError(
             [](Tape &, const std::vector<Var> &v) { return nnet::LeakyRelu(v[0]); },
             {normal(rng, 4, 5)}, rng);
       }},
      {"bilstm",
       [=](Rng &rng, int) {
         auto layer = std::make_shared<nnet::BiLstmLayer>("lstm", 4, 3, rng);
         const int frames = std::uniform_int_distribution<int>(1, 4)(rng);
         const double input = testing::MaxGradientError(
             [layer](Tape &tape, const std::vector<Var> &v) { return layer->Forward(tape, v[0]); },
             {normal(rng, frames, 4)}, rng);
         const Tensor x = normal(rng, frames, 4), w = normal(rng, frames, 6);
         const double params = testing::MaxParameterGradientError(
             [&](Tape &tape) { return nnet::WeightedSum(layer->Forward(tape, tape.Constant(x)), w); },
             {&layer->forward.wx, &layer->forward.wh, &layer->forward.b, &layer->backward.wx,
              &layer->backward.wh, &layer->backward.b});
         return std::max(input, params);
       }},
      {"attentive_pool",
       [=](Rng &rng, int seed) {
         const int frames = std::uniform_int_distribution<int>(1, 5)(rng);
         auto pooler = std::make_shared<sentprobe::AttentivePooler>(4, 3, seed);
         const double input = testing::MaxGradientError(
             [pooler](Tape &tape, const std::vector<Var> &v) { return pooler->Forward(tape, v[0]); },
             {normal(rng, frames, 4)}, rng);
         const Tensor h = normal(rng, frames, 4), target = normal(rng, 1, 3);
         const double params = testing::MaxParameterGradientError(
             [&](Tape &tape) {
               return nnet::CosineLoss(pooler->Forward(tape, tape.Constant(h)), target);
             },
             pooler->Params());
         return std::max(input, params);
       }},
      {"weighted_bce",
       [=](Rng &rng, int) {
         std::uniform_real_distribution<double> prob(0.05, 0.95);
         Tensor p(3, 4), y(3, 4), w(1, 4);
         for (Eigen::Index i = 0; i < p.size(); ++i) {
           p.data()[i] = prob(rng);
           y.data()[i] = std::bernoulli_distribution(0.4)(rng);
         }
         for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = 1.0 + 5.0 * prob(rng);
         return testing::MaxGradientError(
             [y, w](Tape &, const std::vector<Var> &v) { return nnet::WeightedBce(v[0], y, w); },
             {p}, rng);
       }},
      {"cosine_loss",
       [=](Rng &rng, int) {
         const Tensor b = normal(rng, 1, 6);
         return testing::MaxGradientError(
             [b](Tape &, const std::vector<Var> &v) { return nnet::CosineLoss(v[0], b); },
             {normal(rng, 1, 6)}, rng);
       }},
  };
}

Outcome CtcAndGradients() {
  // Loss against path enumeration on every (T, V, L) suite.
  Rng rng(404);
  int suites = 0, loss_failures = 0;
  double worst_loss = 0.0;
  for (int frames = 1; frames <= 6; ++frames) {
    for (int vocab = 2; vocab <= 4; ++vocab) {
      for (int len = 0; len <= 3; ++len) {
        for (int rep = 0; rep < 8; ++rep) {
          std::uniform_int_distribution<int> sym(1, vocab - 1);
          std::vector<int> target(len);
          for (int &s : target) s = sym(rng);
          nnet::Tape tape;
          const Tensor lp =
              nnet::LogSoftmax(tape.Constant(nnet::NormalTensor(frames, vocab, 2.0, rng))).value();
          const nnet::CtcResult r = nnet::CtcLossAndGrad(lp, target);
          const double oracle = testing::CtcBruteForceLoss(lp, target);
          if (std::isinf(oracle)) {
            loss_failures += !(r.impossible && std::isinf(r.loss));
          } else {
            const double rel = std::abs(r.loss - oracle) / std::abs(oracle);
            worst_loss = std::max(worst_loss, rel);
            loss_failures += r.impossible || !(rel <= kCtcRelTol);
          }
          ++suites;
        }
      }
    }
  }
  std::string detail = std::to_string(suites) + " CTC suites, worst loss rel " +
                       Fmt("%.1e", worst_loss) + "; grad rel";
  bool pass = loss_failures == 0;
  for (const GradFamily &f : GradFamilies()) {
    double worst = 0.0;
    for (int seed = 0; seed < kGradCases; ++seed) {
      Rng r(7000 + seed);
      worst = std::max(worst, f.run(r, seed));
    }
    pass = pass && worst < kGradTol;
    detail += std::string(" ") + f.name + " " + Fmt("%.1e", worst);
  }
  return {pass, detail};
}

// ---- normalization ---------------------------------------------------------

Outcome Normalization() {
  Rng rng(768);
  std::uniform_real_distribution<double> log_scale(-8.0, 8.0), pos_scale(-3.0, 3.0);
  std::bernoulli_distribution sparse(0.1);
  double worst_norm = 0.0, worst_idem = 0.0, worst_scale = 0.0;
  for (int i = 0; i < kNormCases; ++i) {
    Tensor x = nnet::NormalTensor(1, kNormDim, 1.0, rng) * std::exp(log_scale(rng));
    if (sparse(rng)) {
      // Single nonzero coordinate.
      const Eigen::Index k = std::uniform_int_distribution<Eigen::Index>(0, kNormDim - 1)(rng);
      const double v = x(0, k) == 0.0 ? 1.0 : x(0, k);
      x.setZero();
      x(0, k) = v;
    }
    const Tensor y = sentprobe::L2FixNorm(x);
    long double sq = 0.0L;
    for (Eigen::Index k = 0; k < y.cols(); ++k) sq += static_cast<long double>(y(0, k)) * y(0, k);
    worst_norm = std::max(worst_norm, static_cast<double>(std::abs(sq / kNormDim - 1.0L)));
    worst_idem = std::max(worst_idem, (sentprobe::L2FixNorm(y) - y).cwiseAbs().maxCoeff());
    const double c = std::exp(pos_scale(rng));
    worst_scale = std::max(worst_scale, (sentprobe::L2FixNorm(x * c) - y).cwiseAbs().maxCoeff());
  }
  const bool pass = worst_norm <= kNormTol && worst_idem <= kExactTol && worst_scale <= kExactTol;
  return {pass, std::to_string(kNormCases) + " vectors at d=" + std::to_string(kNormDim) +
                    Fmt(": |norm^2/d - 1| %.1e, idempotence %.1e, scale %.1e", worst_norm,
                        worst_idem, worst_scale)};
}

// ---- probe end to end ------------------------------------------------------

struct StopTraining {};

Outcome ProbeEndToEnd() {
  dataio::SynthSpec spec;
  spec.seed = 1;
  spec.sizes_a = {kProbeTrain, 100, 100};
  spec.sizes_b = {0, 0, 0};
  const dataio::SynthCorpus corpus = dataio::GenerateSyntheticCorpus(spec);
  dataio::LoadOptions opts;
  opts.layer = spec.informative_layer;
  const dataio::Corpus frames = corpus.Frames(opts);
  std::vector<annot::SemSegment> segments;
  for (const dataio::Utterance &u : frames.utterances()) segments.push_back(u.segment);
  const frameprobe::ProbeVocab vocab(frameprobe::ProbeVocab::CharactersOf(segments),
                                     corpus.inventory);
  const auto train = frameprobe::MakeExamples(frames.Select("A", dataio::Split::kTrain), vocab);
  const auto dev = frameprobe::MakeExamples(frames.Select("A", dataio::Split::kDev), vocab);

  frameprobe::ProbeArch arch;
  arch.hidden = kProbeWidth;
  arch.fc_width = kProbeWidth;
  frameprobe::TrainConfig cfg;
  cfg.max_epochs = kProbeMaxEpochs;
  cfg.patience = kProbeMaxEpochs;
  cfg.seed = 1;

  // Run until dev CER drops below the threshold.
  std::vector<frameprobe::EpochLog> log;
  const Clock::time_point start = Clock::now();
  {
    frameprobe::FrameProbeModel model(spec.dim, vocab.size(), arch, cfg.seed);
    try {
      frameprobe::TrainProbe(model, train, dev, vocab, cfg, [&](const frameprobe::EpochLog &r) {
        log.push_back(r);
        Progress(Fmt("probe epoch %.0f: dev CER %.2f%%", r.epoch, 100.0 * r.cer));
        if (r.cer < kProbeDevCer) throw StopTraining{};
      });
    } catch (const StopTraining &) {
    }
  }
  const double secs = Seconds(start);
  const bool reached = !log.empty() && log.back().cer < kProbeDevCer;

  // Same seed again for the same number of epochs.
  bool deterministic = false;
  {
    frameprobe::FrameProbeModel model(spec.dim, vocab.size(), arch, cfg.seed);
    frameprobe::TrainConfig again = cfg;
    again.max_epochs = static_cast<int>(log.size());
    const frameprobe::TrainResult r = frameprobe::TrainProbe(model, train, dev, vocab, again);
    deterministic = frameprobe::TrainingLogCsv(r.log) == frameprobe::TrainingLogCsv(log);
    for (size_t i = 0; deterministic && i < log.size(); ++i) {
      deterministic = r.log[i].loss == log[i].loss && r.log[i].cer == log[i].cer;
    }
  }

  // Single-utterance overfit.
  double overfit_cer = 1.0;
  int overfit_epochs = 0;
  {
    const std::vector<frameprobe::Example> one = {train.front()};
    frameprobe::ProbeArch small = arch;
    small.dropout = 0.0;
    frameprobe::FrameProbeModel model(spec.dim, vocab.size(), small, 3);
    frameprobe::TrainConfig oc;
    oc.max_epochs = 400;
    oc.patience = 400;
    oc.seed = 3;
    try {
      frameprobe::TrainProbe(model, one, one, vocab, oc, [&](const frameprobe::EpochLog &r) {
        overfit_epochs = r.epoch;
        if (r.cher + r.wer + r.cer + r.cver == 0.0) throw StopTraining{};
      });
    } catch (const StopTraining &) {
    }
    overfit_cer = frameprobe::Evaluate(model, one, vocab).Rate(Metric::kCER);
  }

  const bool pass = reached && secs < kProbeSeconds && deterministic && overfit_cer == 0.0;
  return {pass, Fmt("dev CER %.2f%% at epoch %.0f in %.0f s", reached ? 100.0 * log.back().cer : 100.0,
                    static_cast<double>(log.size()), secs) +
                    (deterministic ? ", rerun identical" : ", rerun differs") +
                    Fmt(", overfit CER %.2f%% after %.0f epochs", 100.0 * overfit_cer,
                        overfit_epochs)};
}

// ---- layer-wise ------------------------------------------------------------

// Experiment settings live in the shipped config files.
harness::ExperimentConfig LoadConfig(const std::string &name) {
  return harness::ExperimentConfig::Load(std::string(SLUPROBE_CONFIG_DIR) + "/" + name);
}

int InformativeLayer(const harness::ExperimentConfig &c) {
  return c.data.synth ? c.data.synth->informative_layer : -1;
}

Outcome Layerwise() {
  const harness::ExperimentConfig c = LoadConfig("layerwise.json");
  const bool setup = c.seeds.size() == kSeeds && c.layers.size() == kLayers &&
                     InformativeLayer(c) == kInformativeLayer;
  auto source = harness::OpenDataSource(c.data);
  const harness::ExperimentReport r = harness::RunLayerwise(c, *source, Progress);

  int at_peak = 0;
  for (const auto &[seed, layer] : r.summary["argmin_test_cer_layer"].items()) {
    at_peak += layer.get<int>() == kInformativeLayer;
  }
  const auto &mode = r.summary["unimodal_minimum_layer"];
  const bool unimodal = !mode.is_null() && std::abs(mode.get<int>() - kInformativeLayer) <= 1;
  std::string curve;
  for (const auto &[layer, cer] : r.summary["mean_test_cer"].items()) {
    curve += (curve.empty() ? "" : " ") + Fmt("%.1f", 100.0 * cer.get<double>());
  }
  return {setup && at_peak >= kLayerwiseArgminSeeds && unimodal,
          "argmin at layer 3 in " + std::to_string(at_peak) + "/" + std::to_string(kSeeds) +
              " seeds; mean test CER by layer [" + curve + "]; unimodal minimum " +
              (mode.is_null() ? std::string("none") : std::to_string(mode.get<int>()))};
}

// ---- transfer and bag-of-concepts grid -------------------------------------

const harness::ExperimentReport &BocGridReport() {
  static std::optional<harness::ExperimentReport> report;
  if (!report) {
    const harness::ExperimentConfig c = LoadConfig("boc_grid.json");
    if (c.seeds.size() != kSeeds || !c.data.synth ||
        c.data.synth->sentence_noise != kSentenceNoise) {
      throw Error(ErrorCode::kInvalidConfig, "boc_grid.json must use 10 seeds and sigma 0.05");
    }
    auto source = harness::OpenDataSource(c.data);
    report = harness::RunBocGrid(c, *source, Progress);
  }
  return *report;
}

// F1 of every sentence cell, keyed by (seed, train cell, test cell).
std::map<std::tuple<uint64_t, std::string, std::string>, double> SentenceCells(
    const harness::ExperimentReport &r) {
  std::map<std::tuple<uint64_t, std::string, std::string>, double> out;
  for (const harness::ReportRow &row : r.rows) {
    if (row.protocol == "sentence" && row.f1) out[{row.seed, row.train_data, row.test_data}] = *row.f1;
  }
  return out;
}

std::set<uint64_t> SeedsOf(const harness::ExperimentReport &r) {
  std::set<uint64_t> seeds;
  for (const harness::ReportRow &row : r.rows) seeds.insert(row.seed);
  return seeds;
}

Outcome Transfer() {
  const harness::ExperimentConfig c = LoadConfig("transfer.json");
  const bool setup = c.seeds.size() == kSeeds && c.data.synth &&
                     4 * c.data.synth->sizes_b.train == c.data.synth->sizes_a.train;
  auto source = harness::OpenDataSource(c.data);
  const harness::TransferOutcome out = harness::RunTransfer(c, *source, Progress);

  std::map<uint64_t, std::map<std::string, harness::ReportRow>> by_seed;
  for (const harness::ReportRow &row : out.report.rows) by_seed[row.seed][row.protocol] = row;
  int warm_wins = 0;
  double zs_wer = 0.0, zs_wer_min = 1e9;
  for (auto &[seed, rows] : by_seed) {
    warm_wins += *rows["warm-start"].cer < *rows["scratch"].cer;
    zs_wer += *rows["zero-shot"].wer / by_seed.size();
    zs_wer_min = std::min(zs_wer_min, *rows["zero-shot"].wer);
  }

  // Zero-shot sentence features: classifier trained on A, tested on B.
  const auto cells = SentenceCells(BocGridReport());
  double f1_min = 1.0;
  for (const char *family : {dataio::kTextFamily, dataio::kSpeechFamily}) {
    double mean = 0.0;
    for (uint64_t seed : SeedsOf(BocGridReport())) {
      mean += cells.at({seed, std::string("A/") + family, std::string("B/") + family}) / kSeeds;
    }
    f1_min = std::min(f1_min, mean);
  }

  const bool pass = setup && warm_wins >= kTransferWinSeeds && zs_wer >= kZeroShotMinWer &&
                    f1_min >= kSentenceMinF1;
  return {pass, "warm-start < scratch CER in " + std::to_string(warm_wins) + "/" +
                    std::to_string(kSeeds) + " seeds; zero-shot frame WER" +
                    Fmt(" mean %.2f%% (min %.2f%%); zero-shot sentence F1 %.2f%% (worst family)",
                        100.0 * zs_wer, 100.0 * zs_wer_min, 100.0 * f1_min)};
}

Outcome BocGrid() {
  const harness::ExperimentReport &r = BocGridReport();
  const auto cells = SentenceCells(r);
  std::map<uint64_t, double> frame_wise;
  for (const harness::ReportRow &row : r.rows) {
    if (row.protocol == "frame-wise" && row.test_data == "B/frames") frame_wise[row.seed] = *row.f1;
  }
  int wins = 0;
  double sentence_mean = 0.0, frame_mean = 0.0;
  for (uint64_t seed : SeedsOf(r)) {
    const double sentence = cells.at({seed, "A/speech", "B/speech"});
    wins += sentence > frame_wise.at(seed);
    sentence_mean += sentence / kSeeds;
    frame_mean += frame_wise.at(seed) / kSeeds;
  }
  return {wins >= kGridWinSeeds,
          "sentence F1 > frame-wise F1 on B test in " + std::to_string(wins) + "/" +
              std::to_string(kSeeds) + Fmt(" seeds (mean %.2f%% vs %.2f%%)",
                                             100.0 * sentence_mean, 100.0 * frame_mean)};
}

// ---- archive format --------------------------------------------------------

Outcome ArchiveFormat() {
  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<int> size(1, 6);
  std::uniform_int_distribution<uint32_t> bits;
  std::vector<dataio::EmbeddingRecord> records;
  for (int i = 0; i < kArchiveRecords; ++i) {
    dataio::EmbeddingRecord r;
    r.id = "rec-" + std::to_string(i) + (i % 9 == 0 ? "-ü" : "");
    r.layer = i % 4 == 0 ? dataio::kSentenceLayer : static_cast<uint16_t>(rng() % 32);
    r.frames = r.layer == dataio::kSentenceLayer ? 1 : size(rng);
    r.dim = size(rng);
    for (size_t k = 0; k < size_t{r.frames} * r.dim; ++k) {
      float v;
      do {
        const uint32_t b = bits(rng);
        std::memcpy(&v, &b, 4);
      } while (!std::isfinite(v));
      r.values.push_back(v);
    }
    records.push_back(std::move(r));
  }
  const std::string bytes = dataio::WriteArchive(records);
  const auto back = dataio::ReadArchive(bytes);
  size_t exact = 0;
  for (size_t i = 0; i < std::min(back.size(), records.size()); ++i) {
    exact += back[i].BitEquals(records[i]);
  }
  const bool rewrite = dataio::WriteArchive(back) == bytes;

  dataio::EmbeddingRecord golden_record;
  golden_record.id = "u1";
  golden_record.layer = 2;
  golden_record.frames = 2;
  golden_record.dim = 3;
  golden_record.values = {1.0f, -2.0f, 0.5f, 0.0f, 3.25f, -0.125f};
  const std::string golden = testing::ReadHexFixture("golden_record.hex");
  const bool golden_ok = dataio::WriteArchive({golden_record}) == golden &&
                         dataio::ReadArchive(golden).size() == 1 &&
                         dataio::ReadArchive(golden)[0].BitEquals(golden_record);

  return {exact == records.size() && back.size() == records.size() && rewrite && golden_ok,
          std::to_string(exact) + "/" + std::to_string(records.size()) +
              " records bit-exact, rewrite " + (rewrite ? "identical" : "differs") +
              ", golden layout " + (golden_ok ? "matches" : "differs")};
}

struct Criterion {
  const char *name;
  Outcome (*run)();
};

int Main(int argc, char **argv) {
  const std::vector<Criterion> criteria = {
      {"metric-oracle", MetricOracle},   {"ctc-gradients", CtcAndGradients},
      {"normalization", Normalization},  {"probe-end-to-end", ProbeEndToEnd},
      {"layerwise", Layerwise},          {"transfer", Transfer},
      {"boc-grid", BocGrid},             {"archive-format", ArchiveFormat},
  };
  const std::set<std::string> only(argv + 1, argv + argc);
  int failures = 0;
  for (const Criterion &c : criteria) {
    if (!only.empty() && !only.count(c.name)) continue;
    Outcome o;
    const Clock::time_point start = Clock::now();
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                Seconds(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace sluprobe::acceptance

int main(int argc, char **argv) { return sluprobe::acceptance::Main(argc, argv); }
