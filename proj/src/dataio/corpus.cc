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

#include "sluprobe/dataio/corpus.h"

#include <filesystem>
#include <unordered_map>

#include "sluprobe/common/error.h"

namespace sluprobe::dataio {
namespace {

bool Admitted(const ManifestEntry &e, const LoadOptions &options) {
  if (!options.langs.empty() && options.langs.count(e.lang) == 0) return false;
  if (!options.splits.empty() && options.splits.count(e.split) == 0) return false;
  return true;
}

}  // namespace

Corpus::Corpus(std::vector<Utterance> utterances)
    : utterances_(std::move(utterances)) {}

std::vector<const Utterance *> Corpus::Select(const std::string &lang,
                                              Split split) const {
  std::vector<const Utterance *> out;
  for (const Utterance &u : utterances_) {
    if (u.entry.lang == lang && u.entry.split == split) out.push_back(&u);
  }
  return out;
}

std::set<std::string> Corpus::Languages() const {
  std::set<std::string> out;
  for (const Utterance &u : utterances_) out.insert(u.entry.lang);
  return out;
}

std::set<int> Corpus::Layers() const {
  std::set<int> out;
  for (const Utterance &u : utterances_) out.insert(u.embedding->layer);
  return out;
}

Corpus BuildCorpus(const std::vector<ManifestEntry> &entries,
                   const ArchiveSet &archives,
                   const annot::ConceptInventory &inv,
                   const LoadOptions &options) {
  // (archive, id, layer) -> record
  std::map<std::string, std::unordered_map<std::string, std::map<int, const EmbeddingRecord *>>>
      index;
  for (const auto &[path, records] : archives) {
    auto &by_id = index[path];
    for (const EmbeddingRecord &r : records) by_id[r.id][r.layer] = &r;
  }

  std::vector<Utterance> utterances;
  std::set<std::string> ids;
  for (const ManifestEntry &e : entries) {
    if (!Admitted(e, options)) continue;
    if (!ids.insert(e.id).second) {
      throw Error(ErrorCode::kDuplicateId, "manifest id '" + e.id + "' appears twice");
    }
    const int layer = options.layer.value_or(e.layer);
    const EmbeddingRecord *record = nullptr;
    if (auto a = index.find(e.archive); a != index.end()) {
      if (auto r = a->second.find(e.id); r != a->second.end()) {
        if (auto l = r->second.find(layer); l != r->second.end()) record = l->second;
      }
    }
    if (record == nullptr) {
      throw Error(ErrorCode::kMissingEmbedding,
                  "no record for id '" + e.id + "' at layer " + std::to_string(layer) +
                      " in '" + e.archive + "'");
    }
    Utterance u;
    u.entry = e;
    u.entry.layer = layer;
    try {
      u.segment = annot::ParseStrict(e.tagged_text, inv);
    } catch (const Error &err) {
      throw Error(ErrorCode::kParseError, "utterance '" + e.id + "': " + err.what());
    }
    u.embedding = std::make_shared<const EmbeddingRecord>(*record);
    if (options.log != nullptr) options.log->Record(e.lang, e.split);
    utterances.push_back(std::move(u));
  }
  return Corpus(std::move(utterances));
}

Corpus LoadCorpus(const std::string &manifest_path,
                  const annot::ConceptInventory &inv,
                  const LoadOptions &options) {
  namespace fs = std::filesystem;
  const std::vector<ManifestEntry> entries = LoadManifest(manifest_path);
  const fs::path base = fs::path(manifest_path).parent_path();
  ArchiveSet archives;
  for (const ManifestEntry &e : entries) {
    if (!Admitted(e, options) || archives.count(e.archive)) continue;
    fs::path p(e.archive);
    if (p.is_relative()) p = base / p;
    archives[e.archive] = LoadArchive(p.string());
  }
  return BuildCorpus(entries, archives, inv, options);
}

}  // namespace sluprobe::dataio
