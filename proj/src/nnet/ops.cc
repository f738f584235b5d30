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

#include "sluprobe/nnet/ops.h"

#include <cmath>

#include "sluprobe/common/error.h"

namespace sluprobe::nnet {
namespace {

[[noreturn]] void ShapeError(const char *op, const Tensor &a, const Tensor &b) {
  throw Error(ErrorCode::kShapeMismatch,
              std::string(op) + ": " + ShapeString(a) + " vs " + ShapeString(b));
}

}  // namespace

Var MatMul(Var a, Var b) {
  const Tensor &av = a.value();
  const Tensor &bv = b.value();
  if (av.cols() != bv.rows()) ShapeError("MatMul", av, bv);
  const int ia = a.id();
  const int ib = b.id();
  return a.tape().Record(av * bv, {a, b}, [ia, ib](Tape &t, int self) {
    const Tensor &g = t.grad(self);
    if (t.needs_grad(ia)) t.AccumulateGradExpr(ia, g * t.value(ib).transpose());
    if (t.needs_grad(ib)) t.AccumulateGradExpr(ib, t.value(ia).transpose() * g);
  });
}

Var Add(Var a, Var b) {
  CheckSameShape("Add", a.value(), b.value());
  const int ia = a.id();
  const int ib = b.id();
  return a.tape().Record(a.value() + b.value(), {a, b},
                         [ia, ib](Tape &t, int self) {
                           t.AccumulateGrad(ia, t.grad(self));
                           t.AccumulateGrad(ib, t.grad(self));
                         });
}

Var AddBias(Var x, Var bias) {
  const Tensor &xv = x.value();
  const Tensor &bv = bias.value();
  if (bv.rows() != 1 || bv.cols() != xv.cols()) ShapeError("AddBias", xv, bv);
  Tensor out = xv.rowwise() + bv.row(0);
  const int ix = x.id();
  const int ib = bias.id();
  return x.tape().Record(std::move(out), {x, bias}, [ix, ib](Tape &t, int self) {
    const Tensor &g = t.grad(self);
    t.AccumulateGrad(ix, g);
    if (t.needs_grad(ib)) t.AccumulateGradExpr(ib, g.colwise().sum());
  });
}

Var Scale(Var x, double factor) {
  const int ix = x.id();
  return x.tape().Record(x.value() * factor, {x},
                         [ix, factor](Tape &t, int self) {
                           t.AccumulateGradExpr(ix, t.grad(self) * factor);
                         });
}

Var ConcatCols(Var a, Var b) {
  const Tensor &av = a.value();
  const Tensor &bv = b.value();
  if (av.rows() != bv.rows()) ShapeError("ConcatCols", av, bv);
  Tensor out(av.rows(), av.cols() + bv.cols());
  out << av, bv;
  const int ia = a.id();
  const int ib = b.id();
  const Eigen::Index ca = av.cols();
  const Eigen::Index cb = bv.cols();
  return a.tape().Record(std::move(out), {a, b},
                         [ia, ib, ca, cb](Tape &t, int self) {
                           const Tensor &g = t.grad(self);
                           if (t.needs_grad(ia)) t.AccumulateGradExpr(ia, g.leftCols(ca));
                           if (t.needs_grad(ib)) t.AccumulateGradExpr(ib, g.rightCols(cb));
                         });
}

Var SliceCols(Var x, Eigen::Index begin, Eigen::Index count) {
  const Tensor &xv = x.value();
  if (begin < 0 || count < 0 || begin + count > xv.cols()) {
    throw Error(ErrorCode::kShapeMismatch,
                "SliceCols: [" + std::to_string(begin) + ", +" +
                    std::to_string(count) + ") out of " + ShapeString(xv));
  }
  const int ix = x.id();
  const Eigen::Index rows = xv.rows();
  const Eigen::Index cols = xv.cols();
  return x.tape().Record(xv.middleCols(begin, count), {x},
                         [ix, begin, count, rows, cols](Tape &t, int self) {
                           Tensor g = Tensor::Zero(rows, cols);
                           g.middleCols(begin, count) = t.grad(self);
                           t.AccumulateGrad(ix, g);
                         });
}

Var Transpose(Var x) {
  const int ix = x.id();
  return x.tape().Record(x.value().transpose(), {x}, [ix](Tape &t, int self) {
    t.AccumulateGradExpr(ix, t.grad(self).transpose());
  });
}

Var LeakyRelu(Var x, double slope) {
  const Tensor &xv = x.value();
  Tensor out = xv.unaryExpr([slope](double v) { return v > 0 ? v : slope * v; });
  const int ix = x.id();
  return x.tape().Record(std::move(out), {x}, [ix, slope](Tape &t, int self) {
    const Tensor &xv = t.value(ix);
    Tensor d = xv.unaryExpr([slope](double v) { return v > 0 ? 1.0 : slope; });
    t.AccumulateGradExpr(ix, t.grad(self).cwiseProduct(d));
  });
}

Var Relu(Var x) { return LeakyRelu(x, 0.0); }

Var Tanh(Var x) {
  Tensor out = x.value().array().tanh().matrix();
  const int ix = x.id();
  return x.tape().Record(std::move(out), {x}, [ix](Tape &t, int self) {
    const Tensor &y = t.value(self);
    t.AccumulateGradExpr(
        ix, (t.grad(self).array() * (1.0 - y.array().square())).matrix());
  });
}

Var Sigmoid(Var x) {
  Tensor out =
      x.value().unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
  const int ix = x.id();
  return x.tape().Record(std::move(out), {x}, [ix](Tape &t, int self) {
    const Tensor &y = t.value(self);
    t.AccumulateGradExpr(
        ix, (t.grad(self).array() * y.array() * (1.0 - y.array())).matrix());
  });
}

Var Softmax(Var x) {
  const Tensor &xv = x.value();
  Tensor out(xv.rows(), xv.cols());
  for (Eigen::Index r = 0; r < xv.rows(); ++r) {
    const double m = xv.row(r).maxCoeff();
    out.row(r) = (xv.row(r).array() - m).exp().matrix();
    out.row(r) /= out.row(r).sum();
  }
  const int ix = x.id();
  return x.tape().Record(std::move(out), {x}, [ix](Tape &t, int self) {
    const Tensor &y = t.value(self);
    const Tensor &g = t.grad(self);
    // dx = y * (g - <g, y>) per row.
    Eigen::VectorXd dots = g.cwiseProduct(y).rowwise().sum();
    Tensor d = y.cwiseProduct(g.colwise() - dots);
    t.AccumulateGrad(ix, d);
  });
}

Var LogSoftmax(Var x) {
  const Tensor &xv = x.value();
  Tensor out(xv.rows(), xv.cols());
  for (Eigen::Index r = 0; r < xv.rows(); ++r) {
    const double m = xv.row(r).maxCoeff();
    const double lse = m + std::log((xv.row(r).array() - m).exp().sum());
    out.row(r) = xv.row(r).array() - lse;
  }
  const int ix = x.id();
  return x.tape().Record(std::move(out), {x}, [ix](Tape &t, int self) {
    const Tensor &y = t.value(self);
    const Tensor &g = t.grad(self);
    // dx = g - softmax * sum(g) per row.
    Eigen::VectorXd sums = g.rowwise().sum();
    Tensor d = g - (y.array().exp().colwise() * sums.array()).matrix();
    t.AccumulateGrad(ix, d);
  });
}

Var Dropout(Var x, double p, bool train, Rng &rng) {
  if (!train || p <= 0.0) return x;
  if (p >= 1.0) {
    throw Error(ErrorCode::kInvalidConfig, "dropout probability must be < 1");
  }
  std::bernoulli_distribution keep(1.0 - p);
  const double scale = 1.0 / (1.0 - p);
  Tensor mask(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = keep(rng) ? scale : 0.0;
  }
  Tensor out = x.value().cwiseProduct(mask);
  const int ix = x.id();
  return x.tape().Record(std::move(out), {x},
                         [ix, mask = std::move(mask)](Tape &t, int self) {
                           t.AccumulateGradExpr(ix, t.grad(self).cwiseProduct(mask));
                         });
}

Var WeightedSum(Var x, const Tensor &weights) {
  CheckSameShape("WeightedSum", x.value(), weights);
  Tensor out(1, 1);
  out(0, 0) = x.value().cwiseProduct(weights).sum();
  const int ix = x.id();
  return x.tape().Record(std::move(out), {x},
                         [ix, weights](Tape &t, int self) {
                           t.AccumulateGradExpr(ix, weights * t.grad(self)(0, 0));
                         });
}

Var Mean(Var x) {
  const double n = static_cast<double>(x.value().size());
  Tensor out(1, 1);
  out(0, 0) = x.value().sum() / n;
  const int ix = x.id();
  const Eigen::Index rows = x.rows();
  const Eigen::Index cols = x.cols();
  return x.tape().Record(std::move(out), {x},
                         [ix, n, rows, cols](Tape &t, int self) {
                           t.AccumulateGradExpr(
                               ix, Tensor::Constant(rows, cols, t.grad(self)(0, 0) / n));
                         });
}

Var AddScalars(Var a, Var b) {
  if (a.value().size() != 1 || b.value().size() != 1) {
    ShapeError("AddScalars", a.value(), b.value());
  }
  return Add(a, b);
}

Linear::Linear(const std::string &name, Eigen::Index in, Eigen::Index out,
               Rng &rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
  weight = Parameter(name + ".weight", UniformTensor(in, out, limit, rng));
  bias = Parameter(name + ".bias", Tensor::Zero(1, out), true);
}

Var Linear::Forward(Tape &tape, Var x) {
  return AddBias(MatMul(x, tape.Param(weight)), tape.Param(bias));
}

}  // namespace sluprobe::nnet
