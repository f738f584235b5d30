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

#include "sluprobe/dataio/archive.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>
#include <utility>

#include "sluprobe/common/bytes.h"
#include "sluprobe/common/error.h"
#include "sluprobe/common/text.h"

namespace sluprobe::dataio {
namespace {

constexpr char kMagic[4] = {'S', 'E', 'M', 'B'};

std::string Describe(const EmbeddingRecord &r) {
  return "record '" + r.id + "' layer " + std::to_string(r.layer);
}

void CheckValues(const EmbeddingRecord &r) {
  for (size_t i = 0; i < r.values.size(); ++i) {
    if (!std::isfinite(r.values[i])) {
      throw Error(ErrorCode::kNonFiniteValue,
                  Describe(r) + " has a non-finite value at index " + std::to_string(i));
    }
  }
}

}  // namespace

bool EmbeddingRecord::BitEquals(const EmbeddingRecord &other) const {
  return id == other.id && layer == other.layer && frames == other.frames &&
         dim == other.dim && values.size() == other.values.size() &&
         std::memcmp(values.data(), other.values.data(),
                     values.size() * sizeof(float)) == 0;
}

void ValidateRecords(const std::vector<EmbeddingRecord> &records) {
  std::set<std::pair<std::string, uint16_t>> seen;
  for (const EmbeddingRecord &r : records) {
    if (r.id.empty()) throw Error(ErrorCode::kInvalidSpec, "record with empty id");
    if (r.frames == 0 || r.dim == 0) {
      throw Error(ErrorCode::kInvalidSpec, Describe(r) + " has an empty shape");
    }
    if (r.values.size() != size_t{r.frames} * r.dim) {
      throw Error(ErrorCode::kInvalidSpec,
                  Describe(r) + " payload size does not match " +
                      std::to_string(r.frames) + "x" + std::to_string(r.dim));
    }
    CheckValues(r);
    if (!seen.emplace(r.id, r.layer).second) {
      throw Error(ErrorCode::kDuplicateId, Describe(r) + " appears twice");
    }
  }
}

std::string WriteArchive(const std::vector<EmbeddingRecord> &records) {
  ValidateRecords(records);
  ByteWriter w;
  w.PutBytes(std::string_view(kMagic, 4));
  w.PutU32(kArchiveVersion);
  w.PutU32(static_cast<uint32_t>(records.size()));
  for (const EmbeddingRecord &r : records) {
    w.PutU32(static_cast<uint32_t>(r.id.size()));
    w.PutBytes(r.id);
    w.PutU16(r.layer);
    w.PutU32(r.frames);
    w.PutU32(r.dim);
    for (float v : r.values) w.PutF32(v);
  }
  return w.Release();
}

std::vector<EmbeddingRecord> ReadArchive(std::string_view bytes) {
  ByteReader r(bytes);
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "not a SEMB archive");
  }
  r.GetBytes(4);
  const uint32_t version = r.GetU32();
  if (version != kArchiveVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "archive version " + std::to_string(version));
  }
  const uint32_t count = r.GetU32();
  std::vector<EmbeddingRecord> records;
  // Each record takes at least 14 bytes; do not trust `count` blindly.
  records.reserve(std::min<size_t>(count, r.remaining() / 14));
  std::set<std::pair<std::string, uint16_t>> seen;
  for (uint32_t i = 0; i < count; ++i) {
    EmbeddingRecord rec;
    const uint32_t id_len = r.GetU32();
    rec.id = std::string(r.GetBytes(id_len));
    rec.layer = r.GetU16();
    rec.frames = r.GetU32();
    rec.dim = r.GetU32();
    const uint64_t n = uint64_t{rec.frames} * rec.dim;
    if (n * 4 > r.remaining()) {
      throw Error(ErrorCode::kTruncatedPayload,
                  Describe(rec) + " needs " + std::to_string(n * 4) +
                      " payload bytes, have " + std::to_string(r.remaining()));
    }
    rec.values.resize(n);
    for (uint64_t k = 0; k < n; ++k) rec.values[k] = r.GetF32();
    if (rec.id.empty() || rec.frames == 0 || rec.dim == 0) {
      throw Error(ErrorCode::kParseError, "record " + std::to_string(i) + " is empty");
    }
    CheckValues(rec);
    if (!seen.emplace(rec.id, rec.layer).second) {
      throw Error(ErrorCode::kDuplicateId, Describe(rec) + " appears twice");
    }
    records.push_back(std::move(rec));
  }
  if (!r.done()) {
    throw Error(ErrorCode::kParseError,
                std::to_string(r.remaining()) + " trailing bytes after " +
                    std::to_string(count) + " records");
  }
  return records;
}

void SaveArchive(const std::string &path,
                 const std::vector<EmbeddingRecord> &records) {
  WriteFileOrThrow(path, WriteArchive(records));
}

std::vector<EmbeddingRecord> LoadArchive(const std::string &path) {
  return ReadArchive(ReadFileOrThrow(path));
}

}  // namespace sluprobe::dataio
