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

#ifndef SLUPROBE_DATAIO_SYNTH_H_
#define SLUPROBE_DATAIO_SYNTH_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sluprobe/annot/concept.h"
#include "sluprobe/annot/tagged.h"
#include "sluprobe/dataio/archive.h"
#include "sluprobe/dataio/corpus.h"
#include "sluprobe/dataio/manifest.h"

namespace sluprobe::dataio {

struct SplitSizes {
  int train = 0;
  int dev = 0;
  int test = 0;
};

// Parameters of the two-language synthetic corpus. Both languages share
// the concept inventory, the alphabet and the sentence-embedding space;
// their word lexicons are disjoint.
struct SynthSpec {
  uint64_t seed = 1;
  std::vector<std::string> concepts = {"reservation", "room-number", "room-type",
                                       "city",        "hotel-name",  "date",
                                       "price",       "comparative"};
  std::string lang_a = "A";
  std::string lang_b = "B";
  SplitSizes sizes_a{1000, 100, 100};
  SplitSizes sizes_b{250, 100, 100};
  std::string alphabet = "abdefgiklmnoprstuvz";
  int values_per_concept = 4;
  int filler_words = 8;
  int min_concepts = 1;
  int max_concepts = 3;
  // Frames emitted per character; tag positions get `boundary_frames`.
  int min_frames = 2;
  int max_frames = 3;
  int boundary_frames = 1;
  int dim = 32;
  int layers = 5;
  int informative_layer = 3;
  // Width of the Gaussian bump g(l) = exp(-(l - l*)^2 / (2 w^2)).
  double layer_width = 1.0;
  // Per-dimension Gaussian noise on frames.
  double frame_noise = 0.5;
  // Scale of the per-language and per-utterance offsets on frames.
  double nuisance = 0.5;
  // Weight of the language-specific perturbation of character signals.
  double accent = 0.8;
  // Sentence-level space: per-dimension noise of the text family; the
  // speech family multiplies it by `speech_noise_factor`.
  int semantic_dim = 64;
  double sentence_noise = 0.05;
  double speech_noise_factor = 3.0;

  // Throws Error{InvalidSpec} naming the offending field.
  void Validate() const;
  annot::ConceptInventory Inventory() const;
  nlohmann::json ToJson() const;
  // Missing keys keep their defaults; unknown keys are an error.
  static SynthSpec FromJson(const nlohmann::json &j);
};

// Names of the sentence-embedding families.
inline constexpr const char *kTextFamily = "text";
inline constexpr const char *kSpeechFamily = "speech";

struct SynthCorpus {
  SynthSpec spec;
  annot::ConceptInventory inventory;
  // Frame-level entries point at "frames_<lang>.semb" with all layers; the
  // entry layer is the informative one.
  std::vector<ManifestEntry> frame_manifest;
  // Sentence-level entries per family, layer 255.
  std::map<std::string, std::vector<ManifestEntry>> sentence_manifests;
  ArchiveSet archives;
  // Per utterance id, the code point each frame renders; 0 marks a tag
  // boundary frame. Not part of the on-disk corpus.
  std::map<std::string, std::vector<char32_t>> frame_symbols;
  // Word lexicon per language, for inspection.
  std::map<std::string, std::vector<std::string>> lexicon;

  Corpus Frames(const LoadOptions &options = {}) const;
  Corpus Sentences(const std::string &family, const LoadOptions &options = {}) const;
};

// Pure function of `spec`.
SynthCorpus GenerateSyntheticCorpus(const SynthSpec &spec);

// Writes spec.json, inventory.txt, manifests and archives into `dir`.
void WriteSyntheticCorpus(const SynthCorpus &corpus, const std::string &dir);

// Toy pairs for pooler distillation: frames are M t + noise where t is
// the target vector, so the mean frame direction encodes the target.
struct DistillSpec {
  uint64_t seed = 1;
  int count = 200;
  int frame_dim = 16;
  int target_dim = 8;
  int min_frames = 3;
  int max_frames = 8;
  double noise = 0.1;
};

struct DistillPair {
  EmbeddingRecord frames;
  EmbeddingRecord target;
};

std::vector<DistillPair> GenerateDistillPairs(const DistillSpec &spec);

}  // namespace sluprobe::dataio

#endif  // SLUPROBE_DATAIO_SYNTH_H_
