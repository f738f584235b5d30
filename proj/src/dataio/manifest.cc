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

#include "sluprobe/dataio/manifest.h"

#include <charconv>

#include "json.hpp"
#include "sluprobe/common/error.h"
#include "sluprobe/common/text.h"

namespace sluprobe::dataio {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(size_t line, const std::string &what) {
  throw Error(ErrorCode::kParseError, "manifest line " + std::to_string(line) + ": " + what);
}

std::string RequireString(const json &obj, const char *key, size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) Fail(line, std::string("missing string '") + key + "'");
  return it->get<std::string>();
}

}  // namespace

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "?";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw Error(ErrorCode::kParseError, "unknown split '" + std::string(name) + "'");
}

std::vector<ManifestEntry> ParseManifest(std::string_view text) {
  std::vector<ManifestEntry> entries;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (NormalizeSpaces(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error &e) {
      Fail(line_no, e.what());
    }
    if (!obj.is_object()) Fail(line_no, "expected an object");
    ManifestEntry e;
    e.id = RequireString(obj, "id", line_no);
    if (e.id.empty()) Fail(line_no, "empty id");
    e.lang = RequireString(obj, "lang", line_no);
    try {
      e.split = ParseSplit(RequireString(obj, "split", line_no));
    } catch (const Error &err) {
      Fail(line_no, err.what());
    }
    e.tagged_text = RequireString(obj, "tagged_text", line_no);
    e.archive = RequireString(obj, "archive", line_no);
    auto layer = obj.find("layer");
    if (layer == obj.end()) Fail(line_no, "missing 'layer'");
    if (layer->is_number_integer()) {
      e.layer = layer->get<int>();
      if (e.layer < 0 || e.layer > 255) Fail(line_no, "layer out of range");
    } else if (layer->is_string()) {
      try {
        e.layer = ParseLayerSelector(layer->get<std::string>());
      } catch (const Error &err) {
        Fail(line_no, err.what());
      }
    } else {
      Fail(line_no, "'layer' must be an integer or selector string");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::string FormatManifest(const std::vector<ManifestEntry> &entries) {
  std::string out;
  for (const ManifestEntry &e : entries) {
    // Keys in a fixed order so files diff cleanly.
    out += "{\"id\":" + json(e.id).dump() + ",\"lang\":" + json(e.lang).dump() +
           ",\"split\":" + json(std::string(SplitName(e.split))).dump() +
           ",\"tagged_text\":" + json(e.tagged_text).dump() +
           ",\"archive\":" + json(e.archive).dump() +
           ",\"layer\":" + std::to_string(e.layer) + "}\n";
  }
  return out;
}

std::vector<ManifestEntry> LoadManifest(const std::string &path) {
  return ParseManifest(ReadFileOrThrow(path));
}

void SaveManifest(const std::string &path,
                  const std::vector<ManifestEntry> &entries) {
  WriteFileOrThrow(path, FormatManifest(entries));
}

int ParseLayerSelector(std::string_view selector) {
  std::string_view digits = selector;
  if (digits.substr(0, 6) == "layer=") digits.remove_prefix(6);
  int value = -1;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() ||
      value < 0 || value > 255) {
    throw Error(ErrorCode::kParseError,
                "bad layer selector '" + std::string(selector) + "'");
  }
  return value;
}

}  // namespace sluprobe::dataio
