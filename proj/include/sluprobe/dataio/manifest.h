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

#ifndef SLUPROBE_DATAIO_MANIFEST_H_
#define SLUPROBE_DATAIO_MANIFEST_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sluprobe::dataio {

enum class Split { kTrain, kDev, kTest };

std::string_view SplitName(Split split);
// Throws Error{ParseError} for anything but "train", "dev" or "test".
Split ParseSplit(std::string_view name);

struct ManifestEntry {
  std::string id;
  std::string lang;
  Split split = Split::kTrain;
  std::string tagged_text;
  // Archive path, relative to the manifest's directory unless absolute.
  std::string archive;
  int layer = 0;

  bool operator==(const ManifestEntry &other) const = default;
};

// JSON lines with keys id, lang, split, tagged_text, archive, layer. Blank
// lines are skipped. Errors carry the 1-based line number.
std::vector<ManifestEntry> ParseManifest(std::string_view text);
std::string FormatManifest(const std::vector<ManifestEntry> &entries);

std::vector<ManifestEntry> LoadManifest(const std::string &path);
void SaveManifest(const std::string &path,
                  const std::vector<ManifestEntry> &entries);

// Parses "layer=N" or a bare "N"; N must be in 0..255.
int ParseLayerSelector(std::string_view selector);

}  // namespace sluprobe::dataio

#endif  // SLUPROBE_DATAIO_MANIFEST_H_
