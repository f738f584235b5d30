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

#include "sluprobe/nnet/ctc.h"

#include <cmath>
#include <limits>

#include "sluprobe/common/error.h"

namespace sluprobe::nnet {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

}  // namespace

CtcVocab::CtcVocab(const std::vector<std::string> &symbols) {
  symbols_.push_back(kBlankSymbol);
  index_.emplace(kBlankSymbol, kBlank);
  for (const auto &s : symbols) {
    if (!index_.emplace(s, static_cast<int>(symbols_.size())).second) {
      throw Error(ErrorCode::kDuplicateId, "duplicate CTC symbol '" + s + "'");
    }
    symbols_.push_back(s);
  }
}

std::optional<int> CtcVocab::IndexOf(const std::string &symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int CtcMinFrames(std::span<const int> target) {
  int frames = static_cast<int>(target.size());
  for (size_t i = 1; i < target.size(); ++i) {
    if (target[i] == target[i - 1]) ++frames;
  }
  return frames;
}

CtcResult CtcLossAndGrad(const Tensor &log_probs, std::span<const int> target) {
  const Eigen::Index frames = log_probs.rows();
  const Eigen::Index vocab = log_probs.cols();
  for (int sym : target) {
    if (sym <= kBlank || sym >= vocab) {
      throw Error(ErrorCode::kOutOfVocabulary,
                  "CTC target symbol " + std::to_string(sym) +
                      " outside (0, " + std::to_string(vocab) + ")");
    }
  }
  CtcResult result;
  result.grad = Tensor::Zero(frames, vocab);
  if (frames == 0 || CtcMinFrames(target) > frames) {
    result.loss = std::numeric_limits<double>::infinity();
    result.impossible = true;
    return result;
  }

  // Extended label sequence: blank, l1, blank, l2, ..., blank.
  const Eigen::Index states = 2 * static_cast<Eigen::Index>(target.size()) + 1;
  std::vector<int> ext(states, kBlank);
  for (size_t i = 0; i < target.size(); ++i) ext[2 * i + 1] = target[i];
  auto can_skip = [&](Eigen::Index s) {
    return s >= 2 && ext[s] != kBlank && ext[s] != ext[s - 2];
  };

  Tensor alpha = Tensor::Constant(frames, states, kNegInf);
  Tensor beta = Tensor::Constant(frames, states, kNegInf);
  alpha(0, 0) = log_probs(0, ext[0]);
  if (states > 1) alpha(0, 1) = log_probs(0, ext[1]);
  for (Eigen::Index t = 1; t < frames; ++t) {
    for (Eigen::Index s = 0; s < states; ++s) {
      double acc = alpha(t - 1, s);
      if (s >= 1) acc = LogAdd(acc, alpha(t - 1, s - 1));
      if (can_skip(s)) acc = LogAdd(acc, alpha(t - 1, s - 2));
      if (acc != kNegInf) alpha(t, s) = acc + log_probs(t, ext[s]);
    }
  }
  const Eigen::Index last = frames - 1;
  beta(last, states - 1) = log_probs(last, ext[states - 1]);
  if (states > 1) beta(last, states - 2) = log_probs(last, ext[states - 2]);
  for (Eigen::Index t = last - 1; t >= 0; --t) {
    for (Eigen::Index s = 0; s < states; ++s) {
      double acc = beta(t + 1, s);
      if (s + 1 < states) acc = LogAdd(acc, beta(t + 1, s + 1));
      if (s + 2 < states && can_skip(s + 2)) acc = LogAdd(acc, beta(t + 1, s + 2));
      if (acc != kNegInf) beta(t, s) = acc + log_probs(t, ext[s]);
    }
  }

  double log_total = alpha(last, states - 1);
  if (states > 1) log_total = LogAdd(log_total, alpha(last, states - 2));
  if (log_total == kNegInf || !std::isfinite(log_total)) {
    result.loss = std::numeric_limits<double>::infinity();
    result.impossible = true;
    return result;
  }
  result.loss = -log_total;

  // alpha and beta both include the emission at t, so alpha*beta/y counts
  // every path through (t, s) once.
  for (Eigen::Index t = 0; t < frames; ++t) {
    for (Eigen::Index s = 0; s < states; ++s) {
      const double ab = alpha(t, s) + beta(t, s);
      if (ab == kNegInf) continue;
      result.grad(t, ext[s]) -= std::exp(ab - log_probs(t, ext[s]) - log_total);
    }
  }
  return result;
}

Var CtcLoss(Var log_probs, std::vector<int> target, bool *impossible) {
  CtcResult res = CtcLossAndGrad(log_probs.value(), target);
  if (impossible != nullptr) *impossible = res.impossible;
  Tensor out(1, 1);
  out(0, 0) = res.impossible ? 0.0 : res.loss;
  const int ix = log_probs.id();
  return log_probs.tape().Record(
      std::move(out), {log_probs},
      [ix, grad = std::move(res.grad)](Tape &t, int self) {
        t.AccumulateGradExpr(ix, grad * t.grad(self)(0, 0));
      });
}

std::vector<int> CtcGreedyDecode(const Tensor &log_probs) {
  std::vector<int> out;
  int prev = -1;
  for (Eigen::Index t = 0; t < log_probs.rows(); ++t) {
    Eigen::Index best = 0;
    log_probs.row(t).maxCoeff(&best);
    const int sym = static_cast<int>(best);
    if (sym != prev && sym != kBlank) out.push_back(sym);
    prev = sym;
  }
  return out;
}

}  // namespace sluprobe::nnet
