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

// Runs the sluprobe binary and checks exit codes and outputs.

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"
#include "sluprobe/common/text.h"
#include "testing/fixtures.h"

#ifndef SLUPROBE_CLI
#error "SLUPROBE_CLI must be defined by the build"
#endif

namespace sluprobe {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult RunCli(const std::string &args) {
  const std::string cmd = std::string(SLUPROBE_CLI) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = ::sluprobe::testing::ScratchDir("cli");
    WriteFileOrThrow(Path("inventory.txt"), "city\ndate\n");
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string &name) const { return dir_ + "/" + name; }

  std::string dir_;
};

TEST_F(CliTest, Version) {
  const RunResult r = RunCli("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sluprobe 0.1.0"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(RunCli("").code, 2);
  EXPECT_EQ(RunCli("no-such-command").code, 2);
  EXPECT_EQ(RunCli("score --ref x").code, 2);
}

TEST_F(CliTest, ScoreMatchesHandCount) {
  WriteFileOrThrow(Path("ref.txt"),
                   "u1\t<city> paris </city> tomorrow\nu2\tbook <date> monday </date>\n");
  WriteFileOrThrow(Path("hyp.txt"), "u2\tbook monday\nu1\t<city> paris </city> tomorrow\n");
  const RunResult r = RunCli("score --ref " + Path("ref.txt") + " --hyp " + Path("hyp.txt") +
                          " --inventory " + Path("inventory.txt") + " --json " +
                          Path("summary.json") + " --csv " + Path("segments.csv"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(ReadFileOrThrow(Path("summary.json")));
  EXPECT_EQ(j["segments"], 2);
  EXPECT_DOUBLE_EQ(j["cer"].get<double>(), 50.0);  // one of two concepts deleted
  EXPECT_DOUBLE_EQ(j["f1"].get<double>(), 200.0 / 3.0);
  EXPECT_DOUBLE_EQ(j["precision"].get<double>(), 100.0);
  EXPECT_DOUBLE_EQ(j["recall"].get<double>(), 50.0);
  EXPECT_NE(ReadFileOrThrow(Path("segments.csv")).find("u2,cer,0,0,1,1,100.00"),
            std::string::npos);
}

TEST_F(CliTest, ScoreValidationErrorsExitTwo) {
  WriteFileOrThrow(Path("ref.txt"), "u1\t<city> paris tomorrow\n");
  WriteFileOrThrow(Path("hyp.txt"), "u1\tparis tomorrow\n");
  const std::string inv = " --inventory " + Path("inventory.txt");
  EXPECT_EQ(RunCli("score --ref " + Path("ref.txt") + " --hyp " + Path("hyp.txt") + inv).code, 2);

  WriteFileOrThrow(Path("ref.txt"), "u1\tparis\nu2\tnice\n");
  EXPECT_EQ(RunCli("score --ref " + Path("ref.txt") + " --hyp " + Path("hyp.txt") + inv).code, 2);

  WriteFileOrThrow(Path("hyp.txt"), "u1\tparis\nu1\tnice\n");
  EXPECT_EQ(RunCli("score --ref " + Path("ref.txt") + " --hyp " + Path("hyp.txt") + inv).code, 2);
}

TEST_F(CliTest, MissingFileExitsOne) {
  EXPECT_EQ(RunCli("score --ref " + Path("absent.txt") + " --hyp " + Path("absent.txt") +
                " --inventory " + Path("inventory.txt"))
                .code,
            1);
}

TEST_F(CliTest, ParseCheckStrict) {
  WriteFileOrThrow(Path("good.txt"), "<city> paris </city>\n");
  WriteFileOrThrow(Path("bad.txt"), "<city> paris\n");
  const std::string inv = " --inventory " + Path("inventory.txt");
  EXPECT_EQ(RunCli("parse-check --strict --in " + Path("good.txt") + inv).code, 0);
  EXPECT_EQ(RunCli("parse-check --in " + Path("bad.txt") + inv).code, 0);
  EXPECT_EQ(RunCli("parse-check --strict --in " + Path("bad.txt") + inv).code, 2);
}

TEST_F(CliTest, SynthThenProbeThenLayerwise) {
  WriteFileOrThrow(Path("spec.json"),
                   R"({"seed": 3, "semantic_dim": 8,
                       "sizes_a": {"train": 8, "dev": 4, "test": 4},
                       "sizes_b": {"train": 4, "dev": 4, "test": 4}})");
  ASSERT_EQ(RunCli("synth --spec " + Path("spec.json") + " --out " + Path("syn")).code, 0);
  EXPECT_EQ(RunCli("parse-check --strict --in " + Path("syn/frames.jsonl") + " --inventory " +
                Path("syn/inventory.txt"))
                .code,
            0);

  WriteFileOrThrow(Path("probe.json"),
                   R"({"inventory": "syn/inventory.txt", "lang": "A",
                       "probe": {"bilstm_layers": 1, "hidden": 4, "fc_layers": 1, "fc_width": 4},
                       "train": {"max_epochs": 1}})");
  ASSERT_EQ(RunCli("train-frame-probe --manifest " + Path("syn/frames.jsonl") +
                " --layer 3 --config " + Path("probe.json") + " --out " + Path("probe"))
                .code,
            0);
  for (const char *f : {"model.snnw", "vocab.txt", "train_log.csv", "summary.json",
                        "test_hypotheses.txt"}) {
    EXPECT_TRUE(fs::exists(Path("probe/") + f)) << f;
  }
  EXPECT_EQ(RunCli("train-frame-probe --manifest " + Path("syn/frames.jsonl") +
                " --layer 9 --config " + Path("probe.json") + " --out " + Path("probe9"))
                .code,
            2);

  WriteFileOrThrow(Path("lw.json"),
                   R"({"name": "lw", "data": {"frames": "syn/frames.jsonl",
                       "inventory": "syn/inventory.txt"}, "layers": [2, 3],
                       "probe": {"bilstm_layers": 1, "hidden": 4, "fc_layers": 1, "fc_width": 4},
                       "train": {"max_epochs": 1}, "output_dir": "lw"})");
  ASSERT_EQ(RunCli("layerwise --config " + Path("lw.json")).code, 0);
  const std::string csv = ReadFileOrThrow(Path("lw/layerwise.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);  // header + 2 layers x 2 splits
  EXPECT_TRUE(fs::exists(Path("lw/layerwise.json")));
}

TEST_F(CliTest, BadConfigExitsTwo) {
  WriteFileOrThrow(Path("bad.json"), R"({"name": "x", "bogus": 1})");
  EXPECT_EQ(RunCli("layerwise --config " + Path("bad.json")).code, 2);
  WriteFileOrThrow(Path("broken.json"), "{");
  EXPECT_EQ(RunCli("layerwise --config " + Path("broken.json")).code, 2);
}

}  // namespace
}  // namespace sluprobe
