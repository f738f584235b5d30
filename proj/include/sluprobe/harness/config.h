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

#ifndef SLUPROBE_HARNESS_CONFIG_H_
#define SLUPROBE_HARNESS_CONFIG_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "sluprobe/annot/concept.h"
#include "sluprobe/dataio/corpus.h"
#include "sluprobe/dataio/synth.h"
#include "sluprobe/frameprobe/model.h"
#include "sluprobe/frameprobe/train.h"
#include "sluprobe/sentprobe/boc.h"

namespace sluprobe::harness {

enum class Protocol { kZeroShot, kScratchTarget, kWarmStart };

std::string ProtocolName(Protocol p);
// Accepts "zero-shot", "scratch" and "warm-start"; throws InvalidConfig.
Protocol ParseProtocol(const std::string &name);

// Where an experiment reads its embeddings from: a synthetic corpus built in
// memory, or manifests on disk.
struct DataConfig {
  std::optional<dataio::SynthSpec> synth;
  std::string frames;                            // frame-level manifest
  std::map<std::string, std::string> sentences;  // family -> manifest
  std::string inventory;
};

struct ExperimentConfig {
  std::string name = "experiment";
  DataConfig data;
  // Probe output characters; empty means derived from the data.
  std::string characters;
  std::string source_lang = "A";
  std::string target_lang = "B";
  std::vector<int> layers;
  std::vector<uint64_t> seeds = {1};
  std::vector<Protocol> protocols = {Protocol::kZeroShot, Protocol::kScratchTarget,
                                     Protocol::kWarmStart};
  frameprobe::ProbeArch probe;
  frameprobe::TrainConfig train;
  sentprobe::BocConfig boc;
  std::vector<std::string> boc_families = {dataio::kTextFamily, dataio::kSpeechFamily};
  std::string output_dir;

  void Validate() const;
  nlohmann::json ToJson() const;
  // Relative paths are resolved against `base_dir`. Throws InvalidConfig.
  static ExperimentConfig FromJson(const nlohmann::json &j, const std::string &base_dir = "");
  static ExperimentConfig Load(const std::string &path);
};

// Read access to the corpora of one experiment.
class DataSource {
 public:
  virtual ~DataSource() = default;
  virtual const annot::ConceptInventory &inventory() const = 0;
  virtual dataio::Corpus Frames(const dataio::LoadOptions &options) const = 0;
  // Throws MissingFamily.
  virtual dataio::Corpus Sentences(const std::string &family,
                                   const dataio::LoadOptions &options) const = 0;
  virtual std::set<std::string> Families() const = 0;
  // Layers present for every frame-level utterance.
  virtual std::set<int> FrameLayers() const = 0;
  // Characters of the tagged text of `lang`, all splits.
  virtual std::set<std::string> Characters(const std::string &lang) const = 0;
  // Characters the data format guarantees; empty when unknown.
  virtual std::set<std::string> DeclaredCharacters() const { return {}; }
};

std::unique_ptr<DataSource> MakeSynthSource(dataio::SynthCorpus corpus);
std::unique_ptr<DataSource> OpenDataSource(const DataConfig &data);

// Output characters for the frame probe: the configured set, else the
// declared set, else the characters of the source language.
std::set<std::string> ProbeCharacters(const ExperimentConfig &cfg, const DataSource &source);

}  // namespace sluprobe::harness

#endif  // SLUPROBE_HARNESS_CONFIG_H_
