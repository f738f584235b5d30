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

#ifndef SLUPROBE_NNET_CTC_H_
#define SLUPROBE_NNET_CTC_H_

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sluprobe/nnet/tape.h"
#include "sluprobe/nnet/tensor.h"

namespace sluprobe::nnet {

inline constexpr int kBlank = 0;

// Output symbol set for CTC; index 0 is the blank.
class CtcVocab {
 public:
  static constexpr const char *kBlankSymbol = "ε";

  CtcVocab() : CtcVocab(std::vector<std::string>{}) {}
  // `symbols` excludes the blank, which is prepended. Throws on duplicates.
  explicit CtcVocab(const std::vector<std::string> &symbols);

  size_t size() const { return symbols_.size(); }
  const std::string &symbol(int index) const { return symbols_.at(index); }
  const std::vector<std::string> &symbols() const { return symbols_; }
  std::optional<int> IndexOf(const std::string &symbol) const;

  bool operator==(const CtcVocab &other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> index_;
};

struct CtcResult {
  double loss = 0.0;       // -log p(target | input); +inf when impossible
  Tensor grad;             // d loss / d log_probs, T x V
  bool impossible = false;
};

// Minimum frame count admitting an alignment: L plus one blank per pair of
// equal adjacent symbols.
int CtcMinFrames(std::span<const int> target);

// Forward-backward in log space. `log_probs` is T x V and is not required
// to be normalized. Impossible targets give loss +inf and zero gradient.
CtcResult CtcLossAndGrad(const Tensor &log_probs, std::span<const int> target);

// Tape op returning the 1x1 loss. An impossible target records loss 0 with
// zero gradient and sets *impossible.
Var CtcLoss(Var log_probs, std::vector<int> target, bool *impossible = nullptr);

// Per-frame argmax, collapse repeats, drop blanks.
std::vector<int> CtcGreedyDecode(const Tensor &log_probs);

}  // namespace sluprobe::nnet

#endif  // SLUPROBE_NNET_CTC_H_
