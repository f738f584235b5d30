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

#include "sluprobe/nnet/lstm.h"

#include <cmath>
#include <memory>

#include "sluprobe/common/error.h"
#include "sluprobe/nnet/ops.h"

namespace sluprobe::nnet {
namespace {

struct ScanCache {
  Tensor gates;   // T x 4H post-activation i, f, g, o
  Tensor cells;   // T x H
  Tensor hprev;   // T x H, state entering each row
  Tensor cprev;   // T x H
};

inline double Sigm(double v) { return 1.0 / (1.0 + std::exp(-v)); }

}  // namespace

Var LstmScan(Var x, Var wx, Var wh, Var b, bool reverse) {
  const Tensor &xv = x.value();
  const Tensor &wxv = wx.value();
  const Tensor &whv = wh.value();
  const Tensor &bv = b.value();
  const Eigen::Index steps = xv.rows();
  const Eigen::Index hidden = whv.rows();
  if (steps < 1) {
    throw Error(ErrorCode::kShapeMismatch, "LstmScan: empty input " + ShapeString(xv));
  }
  if (wxv.rows() != xv.cols() || wxv.cols() != 4 * hidden ||
      whv.cols() != 4 * hidden || bv.rows() != 1 || bv.cols() != 4 * hidden) {
    throw Error(ErrorCode::kShapeMismatch,
                "LstmScan: x " + ShapeString(xv) + ", wx " + ShapeString(wxv) +
                    ", wh " + ShapeString(whv) + ", b " + ShapeString(bv));
  }

  auto cache = std::make_shared<ScanCache>();
  Tensor pre = xv * wxv;
  pre.rowwise() += bv.row(0);
  cache->gates.resize(steps, 4 * hidden);
  cache->cells.resize(steps, hidden);
  cache->hprev.resize(steps, hidden);
  cache->cprev.resize(steps, hidden);
  Tensor out(steps, hidden);

  RowVector h = RowVector::Zero(hidden);
  RowVector c = RowVector::Zero(hidden);
  RowVector a(4 * hidden);
  for (Eigen::Index s = 0; s < steps; ++s) {
    const Eigen::Index t = reverse ? steps - 1 - s : s;
    cache->hprev.row(t) = h;
    cache->cprev.row(t) = c;
    a.noalias() = pre.row(t) + h * whv;
    for (Eigen::Index k = 0; k < hidden; ++k) {
      const double ig = Sigm(a[k]);
      const double fg = Sigm(a[hidden + k]);
      const double gg = std::tanh(a[2 * hidden + k]);
      const double og = Sigm(a[3 * hidden + k]);
      a[k] = ig;
      a[hidden + k] = fg;
      a[2 * hidden + k] = gg;
      a[3 * hidden + k] = og;
      c[k] = fg * c[k] + ig * gg;
      h[k] = og * std::tanh(c[k]);
    }
    cache->gates.row(t) = a;
    cache->cells.row(t) = c;
    out.row(t) = h;
  }

  const int ix = x.id();
  const int iwx = wx.id();
  const int iwh = wh.id();
  const int ib = b.id();
  return x.tape().Record(
      std::move(out), {x, wx, wh, b},
      [ix, iwx, iwh, ib, reverse, hidden, cache](Tape &t, int self) {
        const Tensor &dout = t.grad(self);
        const Tensor &whv = t.value(iwh);
        const Eigen::Index steps = dout.rows();
        Tensor dpre(steps, 4 * hidden);
        RowVector dh_next = RowVector::Zero(hidden);
        RowVector dc_next = RowVector::Zero(hidden);
        RowVector da(4 * hidden);
        for (Eigen::Index s = steps - 1; s >= 0; --s) {
          const Eigen::Index r = reverse ? steps - 1 - s : s;
          for (Eigen::Index k = 0; k < hidden; ++k) {
            const double ig = cache->gates(r, k);
            const double fg = cache->gates(r, hidden + k);
            const double gg = cache->gates(r, 2 * hidden + k);
            const double og = cache->gates(r, 3 * hidden + k);
            const double tc = std::tanh(cache->cells(r, k));
            const double dh = dout(r, k) + dh_next[k];
            const double dc = dc_next[k] + dh * og * (1.0 - tc * tc);
            da[k] = dc * gg * ig * (1.0 - ig);
            da[hidden + k] = dc * cache->cprev(r, k) * fg * (1.0 - fg);
            da[2 * hidden + k] = dc * ig * (1.0 - gg * gg);
            da[3 * hidden + k] = dh * tc * og * (1.0 - og);
            dc_next[k] = dc * fg;
          }
          dpre.row(r) = da;
          dh_next.noalias() = da * whv.transpose();
        }
        if (t.needs_grad(ix)) t.AccumulateGradExpr(ix, dpre * t.value(iwx).transpose());
        if (t.needs_grad(iwx)) t.AccumulateGradExpr(iwx, t.value(ix).transpose() * dpre);
        if (t.needs_grad(iwh)) t.AccumulateGradExpr(iwh, cache->hprev.transpose() * dpre);
        if (t.needs_grad(ib)) t.AccumulateGradExpr(ib, dpre.colwise().sum());
      });
}

BiLstmLayer::BiLstmLayer(const std::string &name, Eigen::Index input_dim,
                         Eigen::Index hidden, Rng &rng) {
  auto make = [&](const std::string &dir) {
    LstmDirection d;
    const double limit_x = std::sqrt(6.0 / static_cast<double>(input_dim + 4 * hidden));
    const double limit_h = std::sqrt(6.0 / static_cast<double>(hidden + 4 * hidden));
    d.wx = Parameter(name + "." + dir + ".wx", UniformTensor(input_dim, 4 * hidden, limit_x, rng));
    d.wh = Parameter(name + "." + dir + ".wh", UniformTensor(hidden, 4 * hidden, limit_h, rng));
    Tensor bias = Tensor::Zero(1, 4 * hidden);
    bias.middleCols(hidden, hidden).setOnes();  // forget gate
    d.b = Parameter(name + "." + dir + ".b", std::move(bias), true);
    return d;
  };
  forward = make("fwd");
  backward = make("bwd");
}

Var BiLstmLayer::Forward(Tape &tape, Var x) {
  Var f = LstmScan(x, tape.Param(forward.wx), tape.Param(forward.wh),
                   tape.Param(forward.b), false);
  Var r = LstmScan(x, tape.Param(backward.wx), tape.Param(backward.wh),
                   tape.Param(backward.b), true);
  return ConcatCols(f, r);
}

}  // namespace sluprobe::nnet
