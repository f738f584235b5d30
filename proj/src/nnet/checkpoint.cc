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

#include "sluprobe/nnet/checkpoint.h"

#include "sluprobe/common/bytes.h"
#include "sluprobe/common/error.h"
#include "sluprobe/common/text.h"

namespace sluprobe::nnet {
namespace {

constexpr std::string_view kMagic = "SNNW";

}  // namespace

std::string EncodeCheckpoint(const std::vector<const Parameter *> &params) {
  ByteWriter w;
  w.PutBytes(kMagic);
  w.PutU32(kCheckpointVersion);
  for (const Parameter *p : params) {
    w.PutU32(static_cast<uint32_t>(p->name.size()));
    w.PutBytes(p->name);
    if (p->is_vector) {
      w.PutU32(1);
      w.PutU32(static_cast<uint32_t>(p->value.size()));
    } else {
      w.PutU32(2);
      w.PutU32(static_cast<uint32_t>(p->value.rows()));
      w.PutU32(static_cast<uint32_t>(p->value.cols()));
    }
    for (Eigen::Index i = 0; i < p->value.size(); ++i) {
      w.PutF32(static_cast<float>(p->value.data()[i]));
    }
  }
  return w.Release();
}

std::map<std::string, NamedTensor> DecodeCheckpoint(std::string_view bytes) {
  ByteReader r(bytes);
  if (bytes.size() < 4 || r.GetBytes(4) != kMagic) {
    throw Error(ErrorCode::kBadMagic, "not an SNNW checkpoint");
  }
  const uint32_t version = r.GetU32();
  if (version != kCheckpointVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "checkpoint version " + std::to_string(version));
  }
  std::map<std::string, NamedTensor> out;
  while (!r.done()) {
    const uint32_t name_len = r.GetU32();
    std::string name(r.GetBytes(name_len));
    const uint32_t rank = r.GetU32();
    if (rank < 1 || rank > 2) {
      throw Error(ErrorCode::kParseError,
                  "parameter '" + name + "' has unsupported rank " + std::to_string(rank));
    }
    NamedTensor t;
    t.is_vector = rank == 1;
    const uint32_t rows = rank == 1 ? 1 : r.GetU32();
    const uint32_t cols = r.GetU32();
    t.value.resize(rows, cols);
    for (Eigen::Index i = 0; i < t.value.size(); ++i) {
      t.value.data()[i] = static_cast<double>(r.GetF32());
    }
    CheckFinite(name.c_str(), t.value);
    if (!out.emplace(name, std::move(t)).second) {
      throw Error(ErrorCode::kDuplicateId, "parameter '" + name + "' repeated");
    }
  }
  return out;
}

void SaveCheckpoint(const std::string &path,
                    const std::vector<const Parameter *> &params) {
  WriteFileOrThrow(path, EncodeCheckpoint(params));
}

void RestoreParameters(const std::map<std::string, NamedTensor> &stored,
                       const std::vector<Parameter *> &params) {
  for (Parameter *p : params) {
    auto it = stored.find(p->name);
    if (it == stored.end()) {
      throw Error(ErrorCode::kParseError, "checkpoint lacks '" + p->name + "'");
    }
    CheckSameShape(p->name.c_str(), p->value, it->second.value);
    p->value = it->second.value;
    p->ZeroGrad();
  }
}

void LoadCheckpoint(const std::string &path,
                    const std::vector<Parameter *> &params) {
  RestoreParameters(DecodeCheckpoint(ReadFileOrThrow(path)), params);
}

}  // namespace sluprobe::nnet
