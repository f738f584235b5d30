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

#ifndef SLUPROBE_COMMON_BYTES_H_
#define SLUPROBE_COMMON_BYTES_H_

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

#include "sluprobe/common/error.h"

namespace sluprobe {

// Little-endian encoder into a byte string.
class ByteWriter {
 public:
  void PutU16(uint16_t v) { PutLe(v, 2); }
  void PutU32(uint32_t v) { PutLe(v, 4); }
  void PutF32(float v) {
    uint32_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    PutU32(bits);
  }
  void PutBytes(std::string_view bytes) { out_.append(bytes); }

  const std::string &bytes() const { return out_; }
  std::string Release() { return std::move(out_); }

 private:
  void PutLe(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  std::string out_;
};

// Little-endian decoder; throws Error{TruncatedPayload} on short reads.
class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  uint16_t GetU16() { return static_cast<uint16_t>(GetLe(2)); }
  uint32_t GetU32() { return static_cast<uint32_t>(GetLe(4)); }
  float GetF32() {
    const uint32_t bits = GetU32();
    float v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }
  std::string_view GetBytes(size_t n) {
    Need(n);
    std::string_view out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  size_t position() const { return pos_; }
  size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  void Need(size_t n) const {
    if (remaining() < n) {
      throw Error(ErrorCode::kTruncatedPayload,
                  "need " + std::to_string(n) + " bytes at offset " +
                      std::to_string(pos_) + ", have " + std::to_string(remaining()));
    }
  }
  uint64_t GetLe(int n) {
    Need(static_cast<size_t>(n));
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += static_cast<size_t>(n);
    return v;
  }

  std::string_view data_;
  size_t pos_ = 0;
};

}  // namespace sluprobe

#endif  // SLUPROBE_COMMON_BYTES_H_
