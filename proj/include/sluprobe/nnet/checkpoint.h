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

#ifndef SLUPROBE_NNET_CHECKPOINT_H_
#define SLUPROBE_NNET_CHECKPOINT_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sluprobe/nnet/tensor.h"

namespace sluprobe::nnet {

// "SNNW" checkpoints: magic, u32 version (1), then records until EOF:
//   u32 name_len, name bytes, u32 rank, u32 dims[rank], f32 payload.
// All integers and floats little-endian; payload row-major.
inline constexpr uint32_t kCheckpointVersion = 1;

std::string EncodeCheckpoint(const std::vector<const Parameter *> &params);

struct NamedTensor {
  Tensor value;
  bool is_vector = false;
};

std::map<std::string, NamedTensor> DecodeCheckpoint(std::string_view bytes);

void SaveCheckpoint(const std::string &path,
                    const std::vector<const Parameter *> &params);

// Loads values into `params` by name. Throws Error{ParseError} for a
// missing name and Error{ShapeMismatch} for a shape change.
void LoadCheckpoint(const std::string &path,
                    const std::vector<Parameter *> &params);
void RestoreParameters(const std::map<std::string, NamedTensor> &stored,
                       const std::vector<Parameter *> &params);

}  // namespace sluprobe::nnet

#endif  // SLUPROBE_NNET_CHECKPOINT_H_
