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

#include "sluprobe/dataio/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>

#include "sluprobe/common/error.h"
#include "sluprobe/common/text.h"

namespace sluprobe::dataio {
namespace {

using nlohmann::json;
using Rng = std::mt19937_64;
using Vec = std::vector<double>;

uint64_t SplitMix(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Independent generator per named stream so that, for example, resizing
// language B leaves language A untouched.
Rng StreamRng(uint64_t seed, const std::string &stream) {
  uint64_t h = SplitMix(seed);
  for (unsigned char c : stream) h = SplitMix(h ^ c);
  return Rng(h);
}

Vec Gaussian(int n, double stddev, Rng &rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vec v(n);
  for (double &x : v) x = stddev * dist(rng);
  return v;
}

Vec Unit(int n, Rng &rng) {
  Vec v = Gaussian(n, 1.0, rng);
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double &x : v) x /= norm;
  return v;
}

void AddScaled(Vec &acc, const Vec &v, double scale) {
  for (size_t i = 0; i < acc.size(); ++i) acc[i] += scale * v[i];
}

int Uniform(int lo, int hi, Rng &rng) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

[[noreturn]] void Invalid(const std::string &what) {
  throw Error(ErrorCode::kInvalidSpec, what);
}

bool IsVowel(char c) { return std::string_view("aeiou").find(c) != std::string_view::npos; }

struct Lexicon {
  // values[concept][k] is a phrase of one or two words.
  std::vector<std::vector<std::string>> values;
  std::vector<std::string> fillers;
  std::vector<std::string> words;
};

class WordMaker {
 public:
  explicit WordMaker(const std::string &alphabet) {
    for (char c : alphabet) (IsVowel(c) ? vowels_ : consonants_).push_back(c);
  }

  // Style 0 strings consonant-vowel syllables; style 1 closes each
  // syllable with a consonant. Words are unique across both styles.
  std::string Make(int style, Rng &rng) {
    for (;;) {
      std::string w;
      const int syllables = style == 0 ? Uniform(2, 3, rng) : Uniform(1, 2, rng);
      for (int s = 0; s < syllables; ++s) {
        w.push_back(Pick(consonants_, rng));
        w.push_back(Pick(vowels_, rng));
        if (style == 1) w.push_back(Pick(consonants_, rng));
      }
      if (used_.insert(w).second) return w;
    }
  }

 private:
  static char Pick(const std::string &from, Rng &rng) {
    return from[Uniform(0, static_cast<int>(from.size()) - 1, rng)];
  }
  std::string vowels_;
  std::string consonants_;
  std::set<std::string> used_;
};

Lexicon MakeLexicon(const SynthSpec &spec, int style, WordMaker &maker, Rng &rng) {
  Lexicon lex;
  auto word = [&] {
    std::string w = maker.Make(style, rng);
    lex.words.push_back(w);
    return w;
  };
  lex.values.resize(spec.concepts.size());
  for (auto &phrases : lex.values) {
    for (int k = 0; k < spec.values_per_concept; ++k) {
      std::string phrase = word();
      if (Uniform(0, 2, rng) == 0) phrase += " " + word();
      phrases.push_back(phrase);
    }
  }
  for (int k = 0; k < spec.filler_words; ++k) lex.fillers.push_back(word());
  return lex;
}

annot::SemSegment MakeUtterance(const SynthSpec &spec, const Lexicon &lex,
                                const annot::ConceptInventory &inv, Rng &rng) {
  std::vector<int> order(spec.concepts.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(Uniform(spec.min_concepts, spec.max_concepts, rng));
  annot::SemSegment seg;
  std::bernoulli_distribution filler(0.5);
  for (int c : order) {
    if (!lex.fillers.empty() && filler(rng)) {
      seg.Append(lex.fillers[Uniform(0, spec.filler_words - 1, rng)], std::nullopt);
    }
    const auto &phrases = lex.values[c];
    seg.Append(phrases[Uniform(0, spec.values_per_concept - 1, rng)], inv.label(c));
  }
  if (!lex.fillers.empty() && filler(rng)) {
    seg.Append(lex.fillers[Uniform(0, spec.filler_words - 1, rng)], std::nullopt);
  }
  return seg;
}

// Symbol stream the frames render: characters of each chunk, a space
// between chunks, and a boundary marker (0) at each tag position.
std::vector<char32_t> FrameStream(const annot::SemSegment &seg) {
  std::vector<char32_t> out;
  for (size_t k = 0; k < seg.chunks.size(); ++k) {
    const annot::Chunk &chunk = seg.chunks[k];
    if (k > 0) out.push_back(U' ');
    if (chunk.label) out.push_back(0);
    for (char32_t c : DecodeUtf8(chunk.text)) out.push_back(c);
    if (chunk.label) out.push_back(0);
  }
  return out;
}

EmbeddingRecord MakeRecord(const std::string &id, int layer, int frames, int dim) {
  EmbeddingRecord r;
  r.id = id;
  r.layer = static_cast<uint16_t>(layer);
  r.frames = static_cast<uint32_t>(frames);
  r.dim = static_cast<uint32_t>(dim);
  r.values.reserve(static_cast<size_t>(frames) * dim);
  return r;
}

void Append(EmbeddingRecord &r, const Vec &v) {
  for (double x : v) r.values.push_back(static_cast<float>(x));
}

}  // namespace

void SynthSpec::Validate() const {
  if (concepts.empty()) Invalid("concepts must be non-empty");
  if (lang_a.empty() || lang_b.empty() || lang_a == lang_b) Invalid("language tags must be distinct and non-empty");
  for (const SplitSizes *s : {&sizes_a, &sizes_b}) {
    if (s->train < 0 || s->dev < 0 || s->test < 0) Invalid("split sizes must be >= 0");
  }
  std::set<char> letters;
  bool vowel = false, consonant = false;
  for (char c : alphabet) {
    if (c < 'a' || c > 'z' || !letters.insert(c).second) {
      Invalid("alphabet must hold distinct letters a-z");
    }
    (IsVowel(c) ? vowel : consonant) = true;
  }
  if (!vowel || !consonant) Invalid("alphabet needs at least one vowel and one consonant");
  if (values_per_concept < 1) Invalid("values_per_concept must be >= 1");
  if (filler_words < 0) Invalid("filler_words must be >= 0");
  if (min_concepts < 1 || max_concepts < min_concepts ||
      max_concepts > static_cast<int>(concepts.size())) {
    Invalid("need 1 <= min_concepts <= max_concepts <= number of concepts");
  }
  if (min_frames < 1 || max_frames < min_frames) Invalid("need 1 <= min_frames <= max_frames");
  if (boundary_frames < 0) Invalid("boundary_frames must be >= 0");
  if (dim < 1 || semantic_dim < 1) Invalid("dimensions must be >= 1");
  if (layers < 1 || layers > 255) Invalid("layers must be in 1..255");
  if (informative_layer < 0 || informative_layer >= layers) {
    Invalid("informative_layer must be below layers");
  }
  if (!(layer_width > 0)) Invalid("layer_width must be > 0");
  for (double v : {frame_noise, nuisance, accent, sentence_noise, speech_noise_factor}) {
    if (!(v >= 0) || !std::isfinite(v)) Invalid("noise scales must be finite and >= 0");
  }
  Inventory();
}

annot::ConceptInventory SynthSpec::Inventory() const {
  std::vector<annot::ConceptLabel> labels;
  for (const std::string &c : concepts) labels.push_back(annot::ConceptLabel::Parse(c));
  return annot::ConceptInventory(labels);
}

json SynthSpec::ToJson() const {
  auto sizes = [](const SplitSizes &s) {
    return json{{"train", s.train}, {"dev", s.dev}, {"test", s.test}};
  };
  return json{{"seed", seed},
              {"concepts", concepts},
              {"lang_a", lang_a},
              {"lang_b", lang_b},
              {"sizes_a", sizes(sizes_a)},
              {"sizes_b", sizes(sizes_b)},
              {"alphabet", alphabet},
              {"values_per_concept", values_per_concept},
              {"filler_words", filler_words},
              {"min_concepts", min_concepts},
              {"max_concepts", max_concepts},
              {"min_frames", min_frames},
              {"max_frames", max_frames},
              {"boundary_frames", boundary_frames},
              {"dim", dim},
              {"layers", layers},
              {"informative_layer", informative_layer},
              {"layer_width", layer_width},
              {"frame_noise", frame_noise},
              {"nuisance", nuisance},
              {"accent", accent},
              {"semantic_dim", semantic_dim},
              {"sentence_noise", sentence_noise},
              {"speech_noise_factor", speech_noise_factor}};
}

SynthSpec SynthSpec::FromJson(const json &j) {
  if (!j.is_object()) Invalid("synthetic spec must be a JSON object");
  SynthSpec s;
  const json defaults = s.ToJson();
  for (const auto &[key, value] : j.items()) {
    if (!defaults.contains(key)) Invalid("unknown synthetic spec key '" + key + "'");
  }
  json merged = defaults;
  merged.update(j);
  try {
    auto sizes = [](const json &v) {
      return SplitSizes{v.value("train", 0), v.value("dev", 0), v.value("test", 0)};
    };
    s.seed = merged.at("seed").get<uint64_t>();
    s.concepts = merged.at("concepts").get<std::vector<std::string>>();
    s.lang_a = merged.at("lang_a").get<std::string>();
    s.lang_b = merged.at("lang_b").get<std::string>();
    s.sizes_a = sizes(merged.at("sizes_a"));
    s.sizes_b = sizes(merged.at("sizes_b"));
    s.alphabet = merged.at("alphabet").get<std::string>();
    s.values_per_concept = merged.at("values_per_concept").get<int>();
    s.filler_words = merged.at("filler_words").get<int>();
    s.min_concepts = merged.at("min_concepts").get<int>();
    s.max_concepts = merged.at("max_concepts").get<int>();
    s.min_frames = merged.at("min_frames").get<int>();
    s.max_frames = merged.at("max_frames").get<int>();
    s.boundary_frames = merged.at("boundary_frames").get<int>();
    s.dim = merged.at("dim").get<int>();
    s.layers = merged.at("layers").get<int>();
    s.informative_layer = merged.at("informative_layer").get<int>();
    s.layer_width = merged.at("layer_width").get<double>();
    s.frame_noise = merged.at("frame_noise").get<double>();
    s.nuisance = merged.at("nuisance").get<double>();
    s.accent = merged.at("accent").get<double>();
    s.semantic_dim = merged.at("semantic_dim").get<int>();
    s.sentence_noise = merged.at("sentence_noise").get<double>();
    s.speech_noise_factor = merged.at("speech_noise_factor").get<double>();
  } catch (const json::exception &e) {
    Invalid(std::string("bad synthetic spec: ") + e.what());
  }
  s.Validate();
  return s;
}

Corpus SynthCorpus::Frames(const LoadOptions &options) const {
  return BuildCorpus(frame_manifest, archives, inventory, options);
}

Corpus SynthCorpus::Sentences(const std::string &family,
                              const LoadOptions &options) const {
  auto it = sentence_manifests.find(family);
  if (it == sentence_manifests.end()) {
    throw Error(ErrorCode::kMissingFamily, "no sentence family '" + family + "'");
  }
  return BuildCorpus(it->second, archives, inventory, options);
}

SynthCorpus GenerateSyntheticCorpus(const SynthSpec &spec) {
  spec.Validate();
  SynthCorpus out;
  out.spec = spec;
  out.inventory = spec.Inventory();
  const int dim = spec.dim;
  const double scale = std::sqrt(static_cast<double>(dim));

  WordMaker maker(spec.alphabet);
  Rng lex_rng = StreamRng(spec.seed, "lexicon");
  const Lexicon lex_a = MakeLexicon(spec, 0, maker, lex_rng);
  const Lexicon lex_b = MakeLexicon(spec, 1, maker, lex_rng);
  out.lexicon[spec.lang_a] = lex_a.words;
  out.lexicon[spec.lang_b] = lex_b.words;

  // Character signals: a shared direction per letter, bent per language.
  Rng char_rng = StreamRng(spec.seed, "chars");
  std::map<char32_t, Vec> base;
  for (char c : spec.alphabet + " ") base[static_cast<char32_t>(c)] = Unit(dim, char_rng);
  const Vec boundary = Unit(dim, char_rng);

  // Shared semantic directions, one per concept.
  Rng sem_rng = StreamRng(spec.seed, "semantic");
  std::vector<Vec> semantic;
  for (size_t c = 0; c < spec.concepts.size(); ++c) semantic.push_back(Unit(spec.semantic_dim, sem_rng));

  const std::string text_archive = "sent_text.semb";
  const std::string speech_archive = "sent_speech.semb";
  auto &text_records = out.archives[text_archive];
  auto &speech_records = out.archives[speech_archive];

  for (int which = 0; which < 2; ++which) {
    const std::string &lang = which == 0 ? spec.lang_a : spec.lang_b;
    const Lexicon &lex = which == 0 ? lex_a : lex_b;
    const SplitSizes &sizes = which == 0 ? spec.sizes_a : spec.sizes_b;
    const std::string frame_archive = "frames_" + lang + ".semb";
    auto &frame_records = out.archives[frame_archive];

    Rng accent_rng = StreamRng(spec.seed, "accent/" + lang);
    std::map<char32_t, Vec> signal;
    for (const auto &[c, v] : base) {
      Vec s = v;
      AddScaled(s, Unit(dim, accent_rng), spec.accent);
      double norm = 0.0;
      for (double x : s) norm += x * x;
      for (double &x : s) x *= scale / std::sqrt(norm);
      signal[c] = s;
    }
    Vec boundary_signal = boundary;
    for (double &x : boundary_signal) x *= scale;
    std::vector<Vec> lang_offset;
    for (int l = 0; l < spec.layers; ++l) {
      Vec o = Unit(dim, accent_rng);
      for (double &x : o) x *= scale;
      lang_offset.push_back(o);
    }

    for (Split split : {Split::kTrain, Split::kDev, Split::kTest}) {
      const int count = split == Split::kTrain ? sizes.train
                        : split == Split::kDev ? sizes.dev
                                               : sizes.test;
      const std::string tag = lang + "/" + std::string(SplitName(split));
      Rng text_rng = StreamRng(spec.seed, "text/" + tag);
      Rng frame_rng = StreamRng(spec.seed, "frames/" + tag);
      Rng sent_rng = StreamRng(spec.seed, "sentences/" + tag);
      for (int i = 0; i < count; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%05d", i);
        const std::string id = lang + "-" + std::string(SplitName(split)) + "-" + buf;
        const annot::SemSegment seg = MakeUtterance(spec, lex, out.inventory, text_rng);
        const std::string tagged = annot::RenderTagged(seg);

        ManifestEntry entry{id, lang, split, tagged, frame_archive, spec.informative_layer};
        out.frame_manifest.push_back(entry);

        // Frame grid shared by all layers.
        std::vector<char32_t> per_frame;
        for (char32_t sym : FrameStream(seg)) {
          const int k = sym == 0 ? spec.boundary_frames
                                 : Uniform(spec.min_frames, spec.max_frames, frame_rng);
          per_frame.insert(per_frame.end(), k, sym);
        }
        if (per_frame.empty()) per_frame.push_back(U' ');
        const int frames = static_cast<int>(per_frame.size());
        for (int l = 0; l < spec.layers; ++l) {
          const double d = l - spec.informative_layer;
          const double gain = std::exp(-d * d / (2.0 * spec.layer_width * spec.layer_width));
          Vec speaker = Gaussian(dim, 0.5, frame_rng);
          EmbeddingRecord rec = MakeRecord(id, l, frames, dim);
          for (char32_t sym : per_frame) {
            const Vec &s = sym == 0 ? boundary_signal : signal.at(sym);
            Vec f = Gaussian(dim, spec.frame_noise, frame_rng);
            AddScaled(f, s, gain);
            AddScaled(f, lang_offset[l], spec.nuisance / scale);
            AddScaled(f, speaker, spec.nuisance);
            Append(rec, f);
          }
          frame_records.push_back(std::move(rec));
        }
        out.frame_symbols[id] = std::move(per_frame);

        // Sentence embeddings live in one space shared by both languages.
        Vec meaning(spec.semantic_dim, 0.0);
        const annot::MultiHot bag = annot::BagOfConcepts(seg, out.inventory);
        for (size_t c = 0; c < bag.size(); ++c) {
          if (bag.bits[c]) AddScaled(meaning, semantic[c], 1.0);
        }
        Vec text = meaning, speech = meaning;
        AddScaled(text, Gaussian(spec.semantic_dim, spec.sentence_noise, sent_rng), 1.0);
        AddScaled(speech,
                  Gaussian(spec.semantic_dim, spec.sentence_noise * spec.speech_noise_factor, sent_rng),
                  1.0);
        EmbeddingRecord t = MakeRecord(id, kSentenceLayer, 1, spec.semantic_dim);
        Append(t, text);
        text_records.push_back(std::move(t));
        EmbeddingRecord sp = MakeRecord(id, kSentenceLayer, 1, spec.semantic_dim);
        Append(sp, speech);
        speech_records.push_back(std::move(sp));
        out.sentence_manifests[kTextFamily].push_back(
            ManifestEntry{id, lang, split, tagged, text_archive, kSentenceLayer});
        out.sentence_manifests[kSpeechFamily].push_back(
            ManifestEntry{id, lang, split, tagged, speech_archive, kSentenceLayer});
      }
    }
  }
  return out;
}

void WriteSyntheticCorpus(const SynthCorpus &corpus, const std::string &dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create '" + dir + "': " + ec.message());
  const fs::path base(dir);
  WriteFileOrThrow((base / "spec.json").string(), corpus.spec.ToJson().dump(2) + "\n");
  WriteFileOrThrow((base / "inventory.txt").string(), corpus.inventory.ToText());
  SaveManifest((base / "frames.jsonl").string(), corpus.frame_manifest);
  for (const auto &[family, entries] : corpus.sentence_manifests) {
    SaveManifest((base / ("sent_" + family + ".jsonl")).string(), entries);
  }
  for (const auto &[name, records] : corpus.archives) {
    SaveArchive((base / name).string(), records);
  }
}

std::vector<DistillPair> GenerateDistillPairs(const DistillSpec &spec) {
  if (spec.count < 1 || spec.frame_dim < 1 || spec.target_dim < 1 ||
      spec.min_frames < 1 || spec.max_frames < spec.min_frames || !(spec.noise >= 0)) {
    Invalid("bad distillation spec");
  }
  Rng rng = StreamRng(spec.seed, "distill");
  // Fixed mixing matrix M (frame_dim x target_dim).
  std::vector<Vec> mix;
  for (int r = 0; r < spec.frame_dim; ++r) {
    mix.push_back(Gaussian(spec.target_dim, 1.0 / std::sqrt(spec.target_dim), rng));
  }
  std::vector<DistillPair> pairs;
  for (int i = 0; i < spec.count; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "d-%05d", i);
    const Vec t = Gaussian(spec.target_dim, 1.0, rng);
    Vec mt(spec.frame_dim, 0.0);
    for (int r = 0; r < spec.frame_dim; ++r) {
      for (int c = 0; c < spec.target_dim; ++c) mt[r] += mix[r][c] * t[c];
    }
    const int frames = Uniform(spec.min_frames, spec.max_frames, rng);
    DistillPair p;
    p.frames = MakeRecord(buf, 0, frames, spec.frame_dim);
    for (int f = 0; f < frames; ++f) {
      Vec h = Gaussian(spec.frame_dim, spec.noise, rng);
      AddScaled(h, mt, 1.0);
      Append(p.frames, h);
    }
    p.target = MakeRecord(buf, kSentenceLayer, 1, spec.target_dim);
    Append(p.target, t);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

}  // namespace sluprobe::dataio
