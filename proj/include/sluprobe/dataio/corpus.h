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

#ifndef SLUPROBE_DATAIO_CORPUS_H_
#define SLUPROBE_DATAIO_CORPUS_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sluprobe/annot/concept.h"
#include "sluprobe/annot/tagged.h"
#include "sluprobe/dataio/archive.h"
#include "sluprobe/dataio/manifest.h"

namespace sluprobe::dataio {

// A manifest entry bound to its parsed transcript and embedding.
struct Utterance {
  ManifestEntry entry;
  annot::SemSegment segment;
  std::shared_ptr<const EmbeddingRecord> embedding;
};

// Records which (language, split) groups a loader resolved. Used to prove
// that an experiment never read data it must not see.
class AccessLog {
 public:
  void Record(const std::string &lang, Split split) { touched_.emplace(lang, split); }
  bool Touched(const std::string &lang, Split split) const {
    return touched_.count({lang, split}) > 0;
  }
  const std::set<std::pair<std::string, Split>> &touched() const { return touched_; }

 private:
  std::set<std::pair<std::string, Split>> touched_;
};

struct LoadOptions {
  // Overrides each entry's layer when set.
  std::optional<int> layer;
  // Empty sets admit everything.
  std::set<std::string> langs;
  std::set<Split> splits;
  AccessLog *log = nullptr;
};

// In-memory corpus; utterances keep manifest order.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Utterance> utterances);

  const std::vector<Utterance> &utterances() const { return utterances_; }
  size_t size() const { return utterances_.size(); }

  std::vector<const Utterance *> Select(const std::string &lang, Split split) const;
  std::set<std::string> Languages() const;
  std::set<int> Layers() const;

 private:
  std::vector<Utterance> utterances_;
};

// Archive contents keyed by the path string used in the manifest.
using ArchiveSet = std::map<std::string, std::vector<EmbeddingRecord>>;

// Binds entries to records and strict-parses every transcript. Throws
// MissingEmbedding, DuplicateId (repeated manifest id), or ParseError
// naming the utterance.
Corpus BuildCorpus(const std::vector<ManifestEntry> &entries,
                   const ArchiveSet &archives,
                   const annot::ConceptInventory &inv,
                   const LoadOptions &options = {});

// Reads the manifest and every archive it references (relative paths are
// resolved against the manifest's directory).
Corpus LoadCorpus(const std::string &manifest_path,
                  const annot::ConceptInventory &inv,
                  const LoadOptions &options = {});

}  // namespace sluprobe::dataio

#endif  // SLUPROBE_DATAIO_CORPUS_H_
