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

#ifndef SLUPROBE_TOOLS_CLI_UTIL_H_
#define SLUPROBE_TOOLS_CLI_UTIL_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "sluprobe/dataio/synth.h"
#include "sluprobe/nnet/tensor.h"

namespace sluprobe::cli {

// Parses a JSON config file; throws InvalidConfig or IoError.
nlohmann::json ReadJsonFile(const std::string &path);

// Resolves `path` against the directory of `config_path` when relative.
std::string RelativeTo(const std::string &config_path, const std::string &path);

// One utterance per line. A ".jsonl" file is read as a manifest (id,
// tagged_text); otherwise each line is "id<TAB>tagged text", or just the
// text, in which case the id is the line number.
struct TextLine {
  std::string id;
  std::string text;
  size_t line = 0;
};
std::vector<TextLine> ReadTextLines(const std::string &path);

// Keys: seed, count, frame_dim, target_dim, min_frames, max_frames, noise.
dataio::DistillSpec DistillSpecFromJson(const nlohmann::json &j);

nnet::Tensor RecordTensor(const dataio::EmbeddingRecord &record);

}  // namespace sluprobe::cli

#endif  // SLUPROBE_TOOLS_CLI_UTIL_H_
