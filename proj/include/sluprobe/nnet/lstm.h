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

#ifndef SLUPROBE_NNET_LSTM_H_
#define SLUPROBE_NNET_LSTM_H_

#include <string>

#include "sluprobe/nnet/tape.h"
#include "sluprobe/nnet/tensor.h"

namespace sluprobe::nnet {

// One LSTM scan over the rows of x (T x D). Gate columns are ordered
// input, forget, cell candidate, output; wx is D x 4H, wh is H x 4H and b is
// 1 x 4H. Zero initial state. Returns T x H hidden states, row t aligned
// with input row t whichever the scan direction.
Var LstmScan(Var x, Var wx, Var wh, Var b, bool reverse);

struct LstmDirection {
  Parameter wx;
  Parameter wh;
  Parameter b;
};

// Bidirectional LSTM layer: forward and backward scans concatenated per
// frame (T x 2H).
struct BiLstmLayer {
  LstmDirection forward;
  LstmDirection backward;

  BiLstmLayer() = default;
  BiLstmLayer(const std::string &name, Eigen::Index input_dim,
              Eigen::Index hidden, Rng &rng);

  Eigen::Index input_dim() const { return forward.wx.value.rows(); }
  Eigen::Index hidden() const { return forward.wh.value.rows(); }

  Var Forward(Tape &tape, Var x);
};

}  // namespace sluprobe::nnet

#endif  // SLUPROBE_NNET_LSTM_H_
