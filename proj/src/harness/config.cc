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

#include "sluprobe/harness/config.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sluprobe/annot/tagged.h"
#include "sluprobe/common/error.h"
#include "sluprobe/common/text.h"
#include "sluprobe/dataio/archive.h"
#include "sluprobe/dataio/manifest.h"
#include "sluprobe/frameprobe/vocab.h"

namespace sluprobe::harness {

namespace fs = std::filesystem;

std::string ProtocolName(Protocol p) {
  switch (p) {
    case Protocol::kZeroShot: return "zero-shot";
    case Protocol::kScratchTarget: return "scratch";
    case Protocol::kWarmStart: return "warm-start";
  }
  return "unknown";
}

Protocol ParseProtocol(const std::string &name) {
  if (name == "zero-shot") return Protocol::kZeroShot;
  if (name == "scratch") return Protocol::kScratchTarget;
  if (name == "warm-start") return Protocol::kWarmStart;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown protocol '" + name + "' (expected zero-shot, scratch or warm-start)");
}

void ExperimentConfig::Validate() const {
  const bool manifests = !data.frames.empty() || !data.sentences.empty();
  if (data.synth.has_value() == manifests) {
    throw Error(ErrorCode::kInvalidConfig,
                "data must name either a synthetic spec or manifest files, not both");
  }
  if (manifests && data.inventory.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "manifest data needs an inventory file");
  }
  if (source_lang.empty() || target_lang.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "source_lang and target_lang must be set");
  }
  if (seeds.empty()) throw Error(ErrorCode::kInvalidConfig, "seeds must not be empty");
  if (std::set<uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw Error(ErrorCode::kInvalidConfig, "seeds must be distinct");
  }
  for (int l : layers) {
    if (l < 0 || l >= dataio::kSentenceLayer) {
      throw Error(ErrorCode::kInvalidConfig, "layer " + std::to_string(l) + " out of range");
    }
  }
  if (std::set<int>(layers.begin(), layers.end()).size() != layers.size()) {
    throw Error(ErrorCode::kInvalidConfig, "layers must be distinct");
  }
  if (protocols.empty()) throw Error(ErrorCode::kInvalidConfig, "protocols must not be empty");
  if (boc_families.empty()) throw Error(ErrorCode::kInvalidConfig, "boc_families is empty");
  probe.Validate();
  train.Validate();
  boc.Validate();
}

nlohmann::json ExperimentConfig::ToJson() const {
  nlohmann::ordered_json d;
  if (data.synth) {
    d["synth"] = data.synth->ToJson();
  } else {
    d["frames"] = data.frames;
    d["sentences"] = data.sentences;
    d["inventory"] = data.inventory;
  }
  std::vector<std::string> protocol_names;
  for (Protocol p : protocols) protocol_names.push_back(ProtocolName(p));
  nlohmann::ordered_json j;
  j["name"] = name;
  j["data"] = d;
  j["characters"] = characters;
  j["source_lang"] = source_lang;
  j["target_lang"] = target_lang;
  j["layers"] = layers;
  j["seeds"] = seeds;
  j["protocols"] = protocol_names;
  j["probe"] = probe.ToJson();
  j["train"] = train.ToJson();
  j["boc"] = boc.ToJson();
  j["boc_families"] = boc_families;
  j["output_dir"] = output_dir;
  return j;
}

namespace {

std::string Resolve(const std::string &path, const std::string &base) {
  if (path.empty() || base.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base) / path).string();
}

// Drops keys that ToJson adds for documentation only.
nlohmann::json Settable(const nlohmann::json &j, std::initializer_list<const char *> echo_only) {
  nlohmann::json out = j;
  for (const char *k : echo_only) out.erase(k);
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::FromJson(const nlohmann::json &j, const std::string &base_dir) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidConfig, "experiment config must be an object");
  ExperimentConfig c;
  try {
    for (const auto &[key, value] : j.items()) {
      if (key == "name") {
        c.name = value.get<std::string>();
      } else if (key == "data") {
        for (const auto &[dk, dv] : value.items()) {
          if (dk == "synth") {
            c.data.synth = dataio::SynthSpec::FromJson(dv);
          } else if (dk == "frames") {
            c.data.frames = Resolve(dv.get<std::string>(), base_dir);
          } else if (dk == "sentences") {
            for (const auto &[family, path] : dv.items()) {
              c.data.sentences[family] = Resolve(path.get<std::string>(), base_dir);
            }
          } else if (dk == "inventory") {
            c.data.inventory = Resolve(dv.get<std::string>(), base_dir);
          } else {
            throw Error(ErrorCode::kInvalidConfig, "unknown data key '" + dk + "'");
          }
        }
      } else if (key == "characters") {
        c.characters = value.get<std::string>();
      } else if (key == "source_lang") {
        c.source_lang = value.get<std::string>();
      } else if (key == "target_lang") {
        c.target_lang = value.get<std::string>();
      } else if (key == "layers") {
        c.layers = value.get<std::vector<int>>();
      } else if (key == "seeds") {
        c.seeds = value.get<std::vector<uint64_t>>();
      } else if (key == "protocols") {
        c.protocols.clear();
        for (const auto &p : value) c.protocols.push_back(ParseProtocol(p.get<std::string>()));
      } else if (key == "probe") {
        c.probe = frameprobe::ProbeArch::FromJson(value);
      } else if (key == "train") {
        c.train = frameprobe::TrainConfig::FromJson(
            Settable(value, {"optimizer", "selection", "optimizer_instances"}));
      } else if (key == "boc") {
        c.boc = sentprobe::BocConfig::FromJson(
            Settable(value, {"optimizer", "selection", "input_normalization"}));
      } else if (key == "boc_families") {
        c.boc_families = value.get<std::vector<std::string>>();
      } else if (key == "output_dir") {
        c.output_dir = Resolve(value.get<std::string>(), base_dir);
      } else {
        throw Error(ErrorCode::kInvalidConfig, "unknown experiment key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("bad experiment config: ") + e.what());
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kInvalidSpec) {
      throw Error(ErrorCode::kInvalidConfig, std::string("bad synthetic spec: ") + e.what());
    }
    throw;
  }
  c.Validate();
  return c;
}

ExperimentConfig ExperimentConfig::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidConfig, "config '" + path + "' is not valid JSON: " + e.what());
  }
  return FromJson(j, fs::path(path).parent_path().string());
}

namespace {

std::set<std::string> TextCharacters(const std::vector<dataio::ManifestEntry> &entries,
                                     const annot::ConceptInventory &inv,
                                     const std::string &lang) {
  std::vector<annot::SemSegment> segs;
  for (const dataio::ManifestEntry &e : entries) {
    if (e.lang == lang) segs.push_back(annot::ParseStrict(e.tagged_text, inv));
  }
  return frameprobe::ProbeVocab::CharactersOf(segs);
}

std::set<int> LayersOf(const std::vector<dataio::ManifestEntry> &entries,
                       const dataio::ArchiveSet &archives) {
  std::map<std::pair<std::string, std::string>, std::set<int>> have;
  for (const auto &[path, records] : archives) {
    for (const dataio::EmbeddingRecord &r : records) have[{path, r.id}].insert(r.layer);
  }
  std::optional<std::set<int>> common;
  for (const dataio::ManifestEntry &e : entries) {
    const std::set<int> &layers = have[{e.archive, e.id}];
    if (!common) {
      common = layers;
      continue;
    }
    std::set<int> keep;
    for (int l : *common) {
      if (layers.count(l)) keep.insert(l);
    }
    common = std::move(keep);
  }
  return common.value_or(std::set<int>{});
}

class SynthSource : public DataSource {
 public:
  explicit SynthSource(dataio::SynthCorpus corpus) : corpus_(std::move(corpus)) {
    layers_ = LayersOf(corpus_.frame_manifest, corpus_.archives);
  }
  const annot::ConceptInventory &inventory() const override { return corpus_.inventory; }
  dataio::Corpus Frames(const dataio::LoadOptions &options) const override {
    return corpus_.Frames(options);
  }
  dataio::Corpus Sentences(const std::string &family,
                           const dataio::LoadOptions &options) const override {
    return corpus_.Sentences(family, options);
  }
  std::set<std::string> Families() const override {
    std::set<std::string> out;
    for (const auto &[family, unused] : corpus_.sentence_manifests) out.insert(family);
    return out;
  }
  std::set<int> FrameLayers() const override { return layers_; }
  std::set<std::string> Characters(const std::string &lang) const override {
    return TextCharacters(corpus_.frame_manifest, corpus_.inventory, lang);
  }
  std::set<std::string> DeclaredCharacters() const override {
    std::set<std::string> out = {" "};
    for (char ch : corpus_.spec.alphabet) out.insert(std::string(1, ch));
    return out;
  }

 private:
  dataio::SynthCorpus corpus_;
  std::set<int> layers_;
};

struct ManifestData {
  std::vector<dataio::ManifestEntry> entries;
  dataio::ArchiveSet archives;
};

ManifestData ReadManifest(const std::string &path) {
  ManifestData out;
  out.entries = dataio::LoadManifest(path);
  const fs::path base = fs::path(path).parent_path();
  for (dataio::ManifestEntry &e : out.entries) {
    fs::path p(e.archive);
    if (p.is_relative()) p = base / p;
    e.archive = p.string();
    if (!out.archives.count(e.archive)) out.archives[e.archive] = dataio::LoadArchive(e.archive);
  }
  return out;
}

class ManifestSource : public DataSource {
 public:
  explicit ManifestSource(const DataConfig &data)
      : inventory_(annot::ConceptInventory::Load(data.inventory)) {
    if (!data.frames.empty()) {
      frames_ = ReadManifest(data.frames);
      layers_ = LayersOf(frames_.entries, frames_.archives);
    }
    for (const auto &[family, path] : data.sentences) sentences_[family] = ReadManifest(path);
  }
  const annot::ConceptInventory &inventory() const override { return inventory_; }
  dataio::Corpus Frames(const dataio::LoadOptions &options) const override {
    if (frames_.entries.empty()) {
      throw Error(ErrorCode::kEmptyDataset, "no frame-level manifest configured");
    }
    return dataio::BuildCorpus(frames_.entries, frames_.archives, inventory_, options);
  }
  dataio::Corpus Sentences(const std::string &family,
                           const dataio::LoadOptions &options) const override {
    auto it = sentences_.find(family);
    if (it == sentences_.end()) {
      throw Error(ErrorCode::kMissingFamily, "no sentence family '" + family + "'");
    }
    return dataio::BuildCorpus(it->second.entries, it->second.archives, inventory_, options);
  }
  std::set<std::string> Families() const override {
    std::set<std::string> out;
    for (const auto &[family, unused] : sentences_) out.insert(family);
    return out;
  }
  std::set<int> FrameLayers() const override { return layers_; }
  std::set<std::string> Characters(const std::string &lang) const override {
    return TextCharacters(frames_.entries, inventory_, lang);
  }

 private:
  annot::ConceptInventory inventory_;
  ManifestData frames_;
  std::map<std::string, ManifestData> sentences_;
  std::set<int> layers_;
};

}  // namespace

std::unique_ptr<DataSource> MakeSynthSource(dataio::SynthCorpus corpus) {
  return std::make_unique<SynthSource>(std::move(corpus));
}

std::unique_ptr<DataSource> OpenDataSource(const DataConfig &data) {
  if (data.synth) return MakeSynthSource(dataio::GenerateSyntheticCorpus(*data.synth));
  return std::make_unique<ManifestSource>(data);
}

std::set<std::string> ProbeCharacters(const ExperimentConfig &cfg, const DataSource &source) {
  if (!cfg.characters.empty()) {
    std::set<std::string> out;
    for (const std::string &ch : Utf8Characters(cfg.characters)) out.insert(ch);
    return out;
  }
  std::set<std::string> declared = source.DeclaredCharacters();
  if (!declared.empty()) return declared;
  return source.Characters(cfg.source_lang);
}

}  // namespace sluprobe::harness
