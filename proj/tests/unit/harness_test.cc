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

#include <filesystem>
#include <functional>
#include <memory>
#include <string>

#include "gtest/gtest.h"
#include "sluprobe/common/error.h"
#include "sluprobe/common/text.h"
#include "sluprobe/dataio/synth.h"
#include "sluprobe/harness/config.h"
#include "sluprobe/harness/experiments.h"
#include "sluprobe/harness/report.h"
#include "testing/fixtures.h"

namespace sluprobe::harness {
namespace {

ErrorCode CodeOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no sluprobe::Error thrown";
  return ErrorCode::kIoError;
}

dataio::SynthSpec TinySpec() {
  dataio::SynthSpec s;
  s.seed = 5;
  s.sizes_a = {12, 6, 6};
  s.sizes_b = {8, 6, 6};
  s.semantic_dim = 16;
  return s;
}

ExperimentConfig TinyConfig() {
  ExperimentConfig c;
  c.name = "tiny";
  c.data.synth = TinySpec();
  c.layers = {3};
  c.seeds = {1};
  c.probe.bilstm_layers = 1;
  c.probe.hidden = 8;
  c.probe.fc_layers = 1;
  c.probe.fc_width = 8;
  c.train.max_epochs = 2;
  c.train.patience = 2;
  c.boc.hidden = {8, 8, 8};
  c.boc.max_epochs = 2;
  c.boc.patience = 2;
  return c;
}

std::unique_ptr<DataSource> TinySource() {
  return MakeSynthSource(dataio::GenerateSyntheticCorpus(TinySpec()));
}

// Delegates to a synthetic source; optional hooks alter what it serves.
class AlteredSource : public DataSource {
 public:
  explicit AlteredSource(std::unique_ptr<DataSource> inner) : inner_(std::move(inner)) {}

  std::optional<int> pin_layer;           // every frame request reads this layer
  std::optional<std::string> alias_family;  // every sentence request reads this family
  std::set<std::string> families;           // overrides Families() when set

  const annot::ConceptInventory &inventory() const override { return inner_->inventory(); }
  dataio::Corpus Frames(const dataio::LoadOptions &options) const override {
    dataio::LoadOptions o = options;
    if (pin_layer) o.layer = pin_layer;
    return inner_->Frames(o);
  }
  dataio::Corpus Sentences(const std::string &family,
                           const dataio::LoadOptions &options) const override {
    if (!families.empty() && !families.count(family)) {
      throw Error(ErrorCode::kMissingFamily, family);
    }
    return inner_->Sentences(alias_family.value_or(family), options);
  }
  std::set<std::string> Families() const override {
    return families.empty() ? inner_->Families() : families;
  }
  std::set<int> FrameLayers() const override { return inner_->FrameLayers(); }
  std::set<std::string> Characters(const std::string &lang) const override {
    return inner_->Characters(lang);
  }
  std::set<std::string> DeclaredCharacters() const override {
    return inner_->DeclaredCharacters();
  }

 private:
  std::unique_ptr<DataSource> inner_;
};

// Metric columns only; identity columns are compared separately.
void ExpectSameMetrics(const ReportRow &a, const ReportRow &b) {
  EXPECT_EQ(a.cher, b.cher);
  EXPECT_EQ(a.wer, b.wer);
  EXPECT_EQ(a.cer, b.cer);
  EXPECT_EQ(a.cver, b.cver);
  EXPECT_EQ(a.f1, b.f1);
  EXPECT_EQ(a.best_epoch, b.best_epoch);
  EXPECT_EQ(a.epochs, b.epochs);
}

TEST(UnimodalMinimumTest, Cases) {
  EXPECT_EQ(UnimodalMinimum({1.0, 0.8, 0.3, 0.5, 0.9}), 2u);
  EXPECT_EQ(UnimodalMinimum({0.1, 0.2, 0.3}), 0u);
  EXPECT_EQ(UnimodalMinimum({0.3, 0.2, 0.1}), 2u);
  EXPECT_EQ(UnimodalMinimum({0.5}), 0u);
  EXPECT_EQ(UnimodalMinimum({0.5, 0.3, 0.3, 0.6}), 1u);
  EXPECT_EQ(UnimodalMinimum({0.5, 0.2, 0.6, 0.1, 0.7}), std::nullopt);
  EXPECT_EQ(UnimodalMinimum({0.2, 0.5, 0.2}), std::nullopt);
  EXPECT_EQ(UnimodalMinimum({}), std::nullopt);
}

TEST(ProtocolTest, NamesRoundTrip) {
  for (Protocol p : {Protocol::kZeroShot, Protocol::kScratchTarget, Protocol::kWarmStart}) {
    EXPECT_EQ(ParseProtocol(ProtocolName(p)), p);
  }
  EXPECT_EQ(CodeOf([] { ParseProtocol("few-shot"); }), ErrorCode::kInvalidConfig);
}

TEST(ExperimentConfigTest, JsonRoundTrip) {
  ExperimentConfig c = TinyConfig();
  c.layers = {1, 3};
  c.seeds = {4, 9};
  c.protocols = {Protocol::kWarmStart};
  c.characters = "abc ";
  c.output_dir = "/tmp/out";
  const nlohmann::json j = c.ToJson();
  EXPECT_EQ(ExperimentConfig::FromJson(j).ToJson(), j);
}

TEST(ExperimentConfigTest, Errors) {
  const nlohmann::json base = TinyConfig().ToJson();
  nlohmann::json j = base;
  j["unexpected"] = 1;
  EXPECT_EQ(CodeOf([&] { ExperimentConfig::FromJson(j); }), ErrorCode::kInvalidConfig);

  j = base;
  j["seeds"] = {1, 1};
  EXPECT_EQ(CodeOf([&] { ExperimentConfig::FromJson(j); }), ErrorCode::kInvalidConfig);

  j = base;
  j["layers"] = {2, 2};
  EXPECT_EQ(CodeOf([&] { ExperimentConfig::FromJson(j); }), ErrorCode::kInvalidConfig);

  j = base;
  j["protocols"] = {"few-shot"};
  EXPECT_EQ(CodeOf([&] { ExperimentConfig::FromJson(j); }), ErrorCode::kInvalidConfig);

  ExperimentConfig both = TinyConfig();
  both.data.frames = "frames.jsonl";
  EXPECT_EQ(CodeOf([&] { both.Validate(); }), ErrorCode::kInvalidConfig);

  ExperimentConfig neither = TinyConfig();
  neither.data.synth.reset();
  EXPECT_EQ(CodeOf([&] { neither.Validate(); }), ErrorCode::kInvalidConfig);
}

TEST(ExperimentConfigTest, RelativePathsResolveAgainstBase) {
  ExperimentConfig c = TinyConfig();
  c.data.synth.reset();
  c.data.frames = "frames.jsonl";
  c.data.inventory = "inventory.txt";
  c.output_dir = "out";
  const ExperimentConfig r = ExperimentConfig::FromJson(c.ToJson(), "/data/run");
  EXPECT_EQ(r.data.frames, "/data/run/frames.jsonl");
  EXPECT_EQ(r.data.inventory, "/data/run/inventory.txt");
  EXPECT_EQ(r.output_dir, "/data/run/out");
}

TEST(LayerwiseTest, OneLayerOneSeedGivesOneRowPerSplit) {
  auto source = TinySource();
  const ExperimentReport r = RunLayerwise(TinyConfig(), *source);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].split, "dev");
  EXPECT_EQ(r.rows[1].split, "test");
  for (const ReportRow &row : r.rows) {
    EXPECT_EQ(row.layer, 3);
    EXPECT_EQ(row.seed, 1u);
    EXPECT_EQ(row.train_data, "A");
    EXPECT_EQ(row.test_data, "A");
    EXPECT_TRUE(row.cher && row.wer && row.cer && row.cver && row.f1);
  }
  EXPECT_EQ(r.summary["argmin_test_cer_layer"]["1"], 3);
}

TEST(LayerwiseTest, MissingLayer) {
  auto source = TinySource();
  ExperimentConfig c = TinyConfig();
  c.layers = {7};
  EXPECT_EQ(CodeOf([&] { RunLayerwise(c, *source); }), ErrorCode::kMissingLayer);
}

TEST(LayerwiseTest, IdenticalLayersGiveIdenticalRows) {
  AlteredSource source(TinySource());
  source.pin_layer = 3;
  ExperimentConfig c = TinyConfig();
  c.layers = {2, 3};
  const ExperimentReport r = RunLayerwise(c, source);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(r.rows[0].layer, 2);
  EXPECT_EQ(r.rows[2].layer, 3);
  ExpectSameMetrics(r.rows[0], r.rows[2]);
  ExpectSameMetrics(r.rows[1], r.rows[3]);
}

TEST(LayerwiseTest, ReportIsByteReproducible) {
  auto source = TinySource();
  ExperimentConfig c = TinyConfig();
  c.layers = {2, 3};
  const ExperimentReport a = RunLayerwise(c, *source);
  const ExperimentReport b = RunLayerwise(c, *source);
  EXPECT_EQ(ReportCsv(a.rows), ReportCsv(b.rows));
  EXPECT_EQ(ReportJson(a).dump(), ReportJson(b).dump());
}

TEST(TransferTest, ZeroShotNeverReadsTargetTraining) {
  auto source = TinySource();
  const TransferOutcome out = RunTransfer(TinyConfig(), *source);
  const dataio::AccessLog &zs = out.access.at(Protocol::kZeroShot);
  EXPECT_FALSE(zs.Touched("B", dataio::Split::kTrain));
  EXPECT_FALSE(zs.Touched("B", dataio::Split::kDev));
  EXPECT_TRUE(zs.Touched("B", dataio::Split::kTest));
  EXPECT_TRUE(out.access.at(Protocol::kScratchTarget).Touched("B", dataio::Split::kTrain));
  EXPECT_FALSE(out.access.at(Protocol::kScratchTarget).Touched("A", dataio::Split::kTrain));
  ASSERT_EQ(out.report.rows.size(), 3u);
  EXPECT_EQ(out.report.rows[0].train_data, "A");
  EXPECT_EQ(out.report.rows[1].train_data, "B");
  EXPECT_EQ(out.report.rows[2].train_data, "A->B");
  for (const ReportRow &row : out.report.rows) {
    EXPECT_EQ(row.test_data, "B");
    EXPECT_EQ(row.split, "test");
  }
}

TEST(TransferTest, SameLanguageZeroShotEqualsInLanguageEvaluation) {
  auto source = TinySource();
  ExperimentConfig c = TinyConfig();
  c.target_lang = "A";
  c.protocols = {Protocol::kZeroShot};
  const TransferOutcome out = RunTransfer(c, *source);
  const ExperimentReport lw = RunLayerwise(c, *source);
  ASSERT_EQ(out.report.rows.size(), 1u);
  ASSERT_EQ(lw.rows.size(), 2u);
  ExpectSameMetrics(out.report.rows[0], lw.rows[1]);
}

TEST(TransferTest, VocabularyIncompatible) {
  auto source = TinySource();
  ExperimentConfig c = TinyConfig();
  c.characters = "ab";
  EXPECT_EQ(CodeOf([&] { RunTransfer(c, *source); }), ErrorCode::kVocabularyIncompatible);
}

TEST(TransferTest, NeedsExactlyOneLayer) {
  auto source = TinySource();
  ExperimentConfig c = TinyConfig();
  c.layers = {2, 3};
  EXPECT_EQ(CodeOf([&] { RunTransfer(c, *source); }), ErrorCode::kInvalidConfig);
  c.layers = {9};
  EXPECT_EQ(CodeOf([&] { RunTransfer(c, *source); }), ErrorCode::kMissingLayer);
}

TEST(BocGridTest, MissingFamily) {
  AlteredSource source(TinySource());
  source.families = {dataio::kTextFamily};
  EXPECT_EQ(CodeOf([&] { RunBocGrid(TinyConfig(), source); }), ErrorCode::kMissingFamily);
}

TEST(BocGridTest, GridShape) {
  auto source = TinySource();
  const ExperimentReport r = RunBocGrid(TinyConfig(), *source);
  int sentence = 0, frame = 0;
  for (const ReportRow &row : r.rows) {
    ASSERT_TRUE(row.f1.has_value());
    EXPECT_GE(*row.f1, 0.0);
    EXPECT_LE(*row.f1, 1.0);
    if (row.protocol == "sentence") {
      EXPECT_FALSE(row.cer.has_value());
      ++sentence;
    }
    if (row.protocol == "frame-wise") ++frame;
  }
  EXPECT_EQ(sentence, 8);  // 2 training families x 2 languages x 2 test families
  EXPECT_EQ(frame, 2);
}

TEST(BocGridTest, DegenerateFamiliesGiveEqualCells) {
  AlteredSource source(TinySource());
  source.alias_family = dataio::kTextFamily;
  const ExperimentReport r = RunBocGrid(TinyConfig(), source);
  std::map<std::pair<std::string, std::string>, double> cell;
  for (const ReportRow &row : r.rows) {
    if (row.protocol == "sentence") cell[{row.train_data, row.test_data}] = *row.f1;
  }
  ASSERT_EQ(cell.size(), 8u);
  for (const char *lang : {"B", "A"}) {
    const std::string t = std::string(lang) + "/text", s = std::string(lang) + "/speech";
    auto f1 = [&](const std::string &train, const std::string &test) {
      return cell[std::make_pair(train, test)];
    };
    EXPECT_EQ(f1("A/text", t), f1("A/speech", s));
    EXPECT_EQ(f1("A/text", t), f1("A/text", s));
    EXPECT_EQ(f1("A/speech", t), f1("A/speech", s));
  }
}

ReportRow SampleRow() {
  ReportRow r;
  r.experiment = "exp, \"quoted\"";
  r.protocol = "warm-start";
  r.layer = 3;
  r.seed = 12;
  r.train_data = "A->B";
  r.test_data = "B";
  r.split = "test";
  r.cher = 0.125;
  r.wer = 1.5;
  r.cer = 0.25;
  r.cver = 0.5;
  r.f1 = 0.75;
  r.best_epoch = 4;
  r.epochs = 9;
  return r;
}

TEST(ReportTest, EmptyIsHeaderOnly) {
  const std::string csv = ReportCsv({});
  std::string header;
  for (const std::string &c : ReportColumns()) header += (header.empty() ? "" : ",") + c;
  EXPECT_EQ(csv, header + "\n");
  EXPECT_TRUE(ParseReportCsv(csv).empty());
}

TEST(ReportTest, RowParsesBack) {
  ReportRow na = SampleRow();
  na.layer.reset();
  na.cher.reset();
  na.cer.reset();
  na.best_epoch.reset();
  const std::vector<ReportRow> rows = {SampleRow(), na};
  EXPECT_EQ(ParseReportCsv(ReportCsv(rows)), rows);
}

TEST(ReportTest, CsvRoundsRates) {
  ReportRow r = SampleRow();
  r.cer = 1.0 / 3.0;
  const std::string csv = ReportCsv({r});
  EXPECT_NE(csv.find(",33.33,"), std::string::npos);
  EXPECT_NEAR(*ParseReportCsv(csv)[0].cer, 0.3333, 1e-12);
}

TEST(ReportTest, JsonToCsvLosesNoColumns) {
  ExperimentReport rep;
  rep.name = "x";
  rep.toolkit_version = "v";
  rep.rows = {SampleRow(), SampleRow()};
  rep.rows[1].f1.reset();
  rep.notes = {"note"};
  const nlohmann::ordered_json j = ReportJson(rep);
  EXPECT_EQ(j["columns"].get<std::vector<std::string>>(), ReportColumns());
  const ExperimentReport back = ReportFromJson(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.rows, rep.rows);
  EXPECT_EQ(back.notes, rep.notes);
  EXPECT_EQ(ReportCsv(back.rows), ReportCsv(rep.rows));
}

TEST(ReportTest, HeaderMismatchIsParseError) {
  EXPECT_EQ(CodeOf([] { ParseReportCsv("experiment,protocol\n"); }), ErrorCode::kParseError);
}

TEST(ReportTest, EmitWritesBothForms) {
  const std::string dir = ::sluprobe::testing::ScratchDir("report");
  ExperimentReport rep;
  rep.name = "x";
  rep.rows = {SampleRow()};
  EmitReport(rep, dir, "grid");
  EXPECT_EQ(ReadFileOrThrow(dir + "/grid.csv"), ReportCsv(rep.rows));
  const auto j = nlohmann::json::parse(ReadFileOrThrow(dir + "/grid.json"));
  EXPECT_EQ(ReportFromJson(j).rows, rep.rows);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace sluprobe::harness
