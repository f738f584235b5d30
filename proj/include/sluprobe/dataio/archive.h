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

#ifndef SLUPROBE_DATAIO_ARCHIVE_H_
#define SLUPROBE_DATAIO_ARCHIVE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sluprobe::dataio {

// Layer value reserved for sentence-level (T = 1) records.
inline constexpr uint16_t kSentenceLayer = 255;
inline constexpr uint32_t kArchiveVersion = 1;

// One T x D matrix of 32-bit floats, row-major.
struct EmbeddingRecord {
  std::string id;
  uint16_t layer = 0;
  uint32_t frames = 0;
  uint32_t dim = 0;
  std::vector<float> values;

  float at(uint32_t t, uint32_t d) const { return values[size_t{t} * dim + d]; }
  // Bitwise comparison of all fields, payload included.
  bool BitEquals(const EmbeddingRecord &other) const;
};

// Throws Error{InvalidSpec} for an empty id, a zero dimension or a payload
// size mismatch, Error{NonFiniteValue} for NaN/inf entries and
// Error{DuplicateId} for a repeated (id, layer) pair.
void ValidateRecords(const std::vector<EmbeddingRecord> &records);

// "SEMB" container: magic, u32 version, u32 record count, then per record
// u32 id_len, id, u16 layer, u32 T, u32 D, T*D f32. Little-endian.
std::string WriteArchive(const std::vector<EmbeddingRecord> &records);

// Throws BadMagic, UnsupportedVersion, TruncatedPayload, NonFiniteValue,
// DuplicateId, or ParseError for bytes following the last record.
std::vector<EmbeddingRecord> ReadArchive(std::string_view bytes);

void SaveArchive(const std::string &path,
                 const std::vector<EmbeddingRecord> &records);
std::vector<EmbeddingRecord> LoadArchive(const std::string &path);

}  // namespace sluprobe::dataio

#endif  // SLUPROBE_DATAIO_ARCHIVE_H_
