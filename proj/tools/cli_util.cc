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

#include "cli_util.h"

#include <filesystem>
#include <sstream>

#include "sluprobe/common/error.h"
#include "sluprobe/common/text.h"
#include "sluprobe/dataio/manifest.h"

namespace sluprobe::cli {

nlohmann::json ReadJsonFile(const std::string &path) {
  const std::string text = ReadFileOrThrow(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidConfig, "'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string RelativeTo(const std::string &config_path, const std::string &path) {
  namespace fs = std::filesystem;
  if (path.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(config_path).parent_path() / path).string();
}

std::vector<TextLine> ReadTextLines(const std::string &path) {
  std::vector<TextLine> out;
  if (path.size() >= 6 && path.compare(path.size() - 6, 6, ".jsonl") == 0) {
    size_t n = 0;
    for (const dataio::ManifestEntry &e : dataio::LoadManifest(path)) {
      out.push_back({e.id, e.tagged_text, ++n});
    }
    return out;
  }
  std::istringstream in(ReadFileOrThrow(path));
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      out.push_back({std::to_string(n), line, n});
    } else {
      out.push_back({line.substr(0, tab), line.substr(tab + 1), n});
    }
  }
  return out;
}

dataio::DistillSpec DistillSpecFromJson(const nlohmann::json &j) {
  dataio::DistillSpec s;
  try {
    for (const auto &[key, value] : j.items()) {
      if (key == "seed") s.seed = value.get<uint64_t>();
      else if (key == "count") s.count = value.get<int>();
      else if (key == "frame_dim") s.frame_dim = value.get<int>();
      else if (key == "target_dim") s.target_dim = value.get<int>();
      else if (key == "min_frames") s.min_frames = value.get<int>();
      else if (key == "max_frames") s.max_frames = value.get<int>();
      else if (key == "noise") s.noise = value.get<double>();
      else throw Error(ErrorCode::kInvalidConfig, "unknown distillation data key '" + key + "'");
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("bad distillation data: ") + e.what());
  }
  return s;
}

nnet::Tensor RecordTensor(const dataio::EmbeddingRecord &record) {
  nnet::Tensor t(record.frames, record.dim);
  for (uint32_t i = 0; i < record.frames; ++i) {
    for (uint32_t k = 0; k < record.dim; ++k) t(i, k) = record.at(i, k);
  }
  return t;
}

}  // namespace sluprobe::cli
