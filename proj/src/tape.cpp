#include "socnav/ad/tape.hpp"

#include <cmath>
#include <cstring>
#include <memory>

namespace socnav::ad {

namespace {

void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

}  // namespace

void Tape::check(const Tensor& t, const char* op) const {
  if (!check_finite_) return;
  const double* p = t.data();
  for (int64_t i = 0; i < t.size(); ++i)
    if (!std::isfinite(p[i]))
      throw Error(ErrorCode::NonFinite,
                  std::string(op) + ": non-finite value in result");
}

int Tape::push(std::function<void(Tape&, const Tensor&)> fn) {
  records_.push_back(Record{std::move(fn)});
  return static_cast<int>(records_.size()) - 1;
}

void Tape::record(Tensor& out, std::initializer_list<const Tensor*> inputs,
                  std::function<void(Tape&, const Tensor&)> fn) {
  if (!recording_) return;
  bool live = false;
  for (const Tensor* t : inputs) live = live || t->node >= 0;
  if (live) out.node = push(std::move(fn));
}

void Tape::accumulate(int node, const Tensor& g) {
  if (node < 0) return;
  Tensor& slot = grads_[node];
  if (!slot.defined()) {
    slot = g.clone();
    return;
  }
  double* d = slot.data();
  const double* s = g.data();
  for (int64_t i = 0; i < slot.size(); ++i) d[i] += s[i];
}

Tensor Tape::watch(Parameter& p) {
  Tensor t = p.value;
  if (!recording_ || !p.requires_grad) {
    t.node = -1;
    return t;
  }
  for (const auto& [param, node] : watched_)
    if (param == &p) {
      t.node = node;
      return t;
    }
  t.node = push(nullptr);  // leaf
  watched_.emplace_back(&p, t.node);
  return t;
}

// ---------------------------------------------------------------------------

Tensor Tape::matmul(const Tensor& a, const Tensor& b) {
  require(a.cols() == b.rows(), ErrorCode::ShapeMismatch,
          "matmul: inner dimensions differ");
  Tensor out(a.rows(), b.cols());
  kernels::matmul(a.data(), b.data(), out.data(), a.rows(), a.cols(), b.cols());
  check(out, "matmul");
  const int an = a.node, bn = b.node;
  record(out, {&a, &b}, [a, b, an, bn](Tape& t, const Tensor& g) {
    if (an >= 0) {
      Tensor ga(a.rows(), a.cols());
      kernels::matmul_nt(g.data(), b.data(), ga.data(), g.rows(), g.cols(), b.rows());
      t.accumulate(an, ga);
    }
    if (bn >= 0) {
      Tensor gb(b.rows(), b.cols());
      kernels::matmul_tn(a.data(), g.data(), gb.data(), a.cols(), a.rows(), g.cols());
      t.accumulate(bn, gb);
    }
  });
  return out;
}

Tensor Tape::add(const Tensor& a, const Tensor& b) {
  require(a.same_shape(b), ErrorCode::ShapeMismatch, "add: shapes differ");
  Tensor out(a.rows(), a.cols());
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
  for (int64_t i = 0; i < out.size(); ++i) po[i] = pa[i] + pb[i];
  check(out, "add");
  const int an = a.node, bn = b.node;
  record(out, {&a, &b}, [an, bn](Tape& t, const Tensor& g) {
    t.accumulate(an, g);
    t.accumulate(bn, g);
  });
  return out;
}

Tensor Tape::sub(const Tensor& a, const Tensor& b) {
  require(a.same_shape(b), ErrorCode::ShapeMismatch, "sub: shapes differ");
  Tensor out(a.rows(), a.cols());
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
  for (int64_t i = 0; i < out.size(); ++i) po[i] = pa[i] - pb[i];
  check(out, "sub");
  const int an = a.node, bn = b.node;
  record(out, {&a, &b}, [an, bn](Tape& t, const Tensor& g) {
    t.accumulate(an, g);
    if (bn >= 0) {
      Tensor neg(g.rows(), g.cols());
      const double* s = g.data();
      double* d = neg.data();
      for (int64_t i = 0; i < neg.size(); ++i) d[i] = -s[i];
      t.accumulate(bn, neg);
    }
  });
  return out;
}

Tensor Tape::mul(const Tensor& a, const Tensor& b) {
  require(a.same_shape(b), ErrorCode::ShapeMismatch, "mul: shapes differ");
  Tensor out(a.rows(), a.cols());
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
  for (int64_t i = 0; i < out.size(); ++i) po[i] = pa[i] * pb[i];
  check(out, "mul");
  const int an = a.node, bn = b.node;
  record(out, {&a, &b}, [a, b, an, bn](Tape& t, const Tensor& g) {
    if (an >= 0) {
      Tensor ga(a.rows(), a.cols());
      const double* s = g.data();
      const double* pb2 = b.data();
      double* d = ga.data();
      for (int64_t i = 0; i < ga.size(); ++i) d[i] = s[i] * pb2[i];
      t.accumulate(an, ga);
    }
    if (bn >= 0) {
      Tensor gb(b.rows(), b.cols());
      const double* s = g.data();
      const double* pa2 = a.data();
      double* d = gb.data();
      for (int64_t i = 0; i < gb.size(); ++i) d[i] = s[i] * pa2[i];
      t.accumulate(bn, gb);
    }
  });
  return out;
}

Tensor Tape::mul_rows(const Tensor& a, const Tensor& col) {
  require(col.cols() == 1 && col.rows() == a.rows(), ErrorCode::ShapeMismatch,
          "mul_rows: need one scale per row");
  Tensor out(a.rows(), a.cols());
  const double* pa = a.data();
  const double* pc = col.data();
  double* po = out.data();
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      po[static_cast<int64_t>(i) * a.cols() + j] =
          pa[static_cast<int64_t>(i) * a.cols() + j] * pc[i];
  check(out, "mul_rows");
  const int an = a.node, cn = col.node;
  record(out, {&a, &col}, [a, col, an, cn](Tape& t, const Tensor& g) {
    if (an >= 0) {
      Tensor ga(a.rows(), a.cols());
      const double* s = g.data();
      const double* pc2 = col.data();
      double* d = ga.data();
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
          d[static_cast<int64_t>(i) * a.cols() + j] =
              s[static_cast<int64_t>(i) * a.cols() + j] * pc2[i];
      t.accumulate(an, ga);
    }
    if (cn >= 0) {
      Tensor gc(a.rows(), 1);
      const double* s = g.data();
      const double* pa2 = a.data();
      double* d = gc.data();
      for (int i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (int j = 0; j < a.cols(); ++j)
          acc += s[static_cast<int64_t>(i) * a.cols() + j] *
                 pa2[static_cast<int64_t>(i) * a.cols() + j];
        d[i] = acc;
      }
      t.accumulate(cn, gc);
    }
  });
  return out;
}

Tensor Tape::scale(const Tensor& a, double c) {
  Tensor out(a.rows(), a.cols());
  const double* pa = a.data();
  double* po = out.data();
  for (int64_t i = 0; i < out.size(); ++i) po[i] = pa[i] * c;
  check(out, "scale");
  const int an = a.node;
  record(out, {&a}, [an, c](Tape& t, const Tensor& g) {
    Tensor ga(g.rows(), g.cols());
    const double* s = g.data();
    double* d = ga.data();
    for (int64_t i = 0; i < ga.size(); ++i) d[i] = s[i] * c;
    t.accumulate(an, ga);
  });
  return out;
}

Tensor Tape::add_row_bias(const Tensor& m, const Tensor& bias) {
  require(bias.rows() == 1 && bias.cols() == m.cols(), ErrorCode::ShapeMismatch,
          "add_row_bias: bias must be 1 x cols");
  Tensor out(m.rows(), m.cols());
  const double* pm = m.data();
  const double* pb = bias.data();
  double* po = out.data();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      po[static_cast<int64_t>(i) * m.cols() + j] =
          pm[static_cast<int64_t>(i) * m.cols() + j] + pb[j];
  check(out, "add_row_bias");
  const int mn = m.node, bn = bias.node;
  record(out, {&m, &bias}, [mn, bn](Tape& t, const Tensor& g) {
    t.accumulate(mn, g);
    if (bn >= 0) {
      Tensor gb(1, g.cols());
      double* d = gb.data();
      const double* s = g.data();
      for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) d[j] += s[static_cast<int64_t>(i) * g.cols() + j];
      t.accumulate(bn, gb);
    }
  });
  return out;
}

Tensor Tape::concat_cols(const Tensor& a, const Tensor& b) {
  require(a.rows() == b.rows(), ErrorCode::ShapeMismatch,
          "concat_cols: row counts differ");
  const int p = a.cols(), q = b.cols();
  Tensor out(a.rows(), p + q);
  for (int i = 0; i < a.rows(); ++i) {
    std::memcpy(out.data() + static_cast<int64_t>(i) * (p + q),
                a.data() + static_cast<int64_t>(i) * p, sizeof(double) * p);
    std::memcpy(out.data() + static_cast<int64_t>(i) * (p + q) + p,
                b.data() + static_cast<int64_t>(i) * q, sizeof(double) * q);
  }
  check(out, "concat_cols");
  const int an = a.node, bn = b.node;
  record(out, {&a, &b}, [an, bn, p, q](Tape& t, const Tensor& g) {
    if (an >= 0) {
      Tensor ga(g.rows(), p);
      for (int i = 0; i < g.rows(); ++i)
        std::memcpy(ga.data() + static_cast<int64_t>(i) * p,
                    g.data() + static_cast<int64_t>(i) * (p + q), sizeof(double) * p);
      t.accumulate(an, ga);
    }
    if (bn >= 0) {
      Tensor gb(g.rows(), q);
      for (int i = 0; i < g.rows(); ++i)
        std::memcpy(gb.data() + static_cast<int64_t>(i) * q,
                    g.data() + static_cast<int64_t>(i) * (p + q) + p, sizeof(double) * q);
      t.accumulate(bn, gb);
    }
  });
  return out;
}

Tensor Tape::slice_cols(const Tensor& a, int col0, int col1) {
  require(0 <= col0 && col0 < col1 && col1 <= a.cols(), ErrorCode::IndexOutOfRange,
          "slice_cols: bad column range");
  const int w = col1 - col0;
  Tensor out(a.rows(), w);
  for (int i = 0; i < a.rows(); ++i)
    std::memcpy(out.data() + static_cast<int64_t>(i) * w,
                a.data() + static_cast<int64_t>(i) * a.cols() + col0, sizeof(double) * w);
  check(out, "slice_cols");
  const int an = a.node, ac = a.cols(), ar = a.rows();
  record(out, {&a}, [an, ac, ar, col0, w](Tape& t, const Tensor& g) {
    Tensor ga(ar, ac);
    for (int i = 0; i < ar; ++i)
      std::memcpy(ga.data() + static_cast<int64_t>(i) * ac + col0,
                  g.data() + static_cast<int64_t>(i) * w, sizeof(double) * w);
    t.accumulate(an, ga);
  });
  return out;
}

Tensor Tape::gather_rows(const Tensor& a, std::vector<int> idx) {
  for (int i : idx)
    require(0 <= i && i < a.rows(), ErrorCode::IndexOutOfRange,
            "gather_rows: index out of range");
  Tensor out(static_cast<int>(idx.size()), a.cols());
  kernels::gather_rows(a.data(), a.cols(), idx, out.data());
  check(out, "gather_rows");
  const int an = a.node, ar = a.rows();
  record(out, {&a}, [an, ar, idx = std::move(idx)](Tape& t, const Tensor& g) {
    Tensor ga(ar, g.cols());
    double* d = ga.data();
    const double* s = g.data();
    // Scatter-add in fixed row order keeps backward deterministic.
    for (size_t r = 0; r < idx.size(); ++r)
      for (int j = 0; j < g.cols(); ++j)
        d[static_cast<int64_t>(idx[r]) * g.cols() + j] += s[r * g.cols() + j];
    t.accumulate(an, ga);
  });
  return out;
}

Tensor Tape::segment_sum(const Tensor& values, const std::vector<int>& destination,
                         int num_segments, const kernels::SegmentCsr* csr) {
  require(static_cast<int>(destination.size()) == values.rows(),
          ErrorCode::ShapeMismatch, "segment_sum: one destination per row");
  for (int i : destination)
    require(0 <= i && i < num_segments, ErrorCode::IndexOutOfRange,
            "segment_sum: destination out of range");
  std::shared_ptr<kernels::SegmentCsr> local;
  if (csr == nullptr) {
    local = std::make_shared<kernels::SegmentCsr>(
        kernels::SegmentCsr::build(destination, num_segments));
    csr = local.get();
  }
  Tensor out(num_segments, values.cols());
  kernels::segment_sum(values.data(), values.rows(), values.cols(), *csr, out.data());
  check(out, "segment_sum");
  const int vn = values.node;
  record(out, {&values}, [vn, destination](Tape& t, const Tensor& g) {
    Tensor gv(static_cast<int>(destination.size()), g.cols());
    kernels::gather_rows(g.data(), g.cols(), destination, gv.data());
    t.accumulate(vn, gv);
  });
  return out;
}

Tensor Tape::segment_softmax(const Tensor& scores, const std::vector<int>& destination,
                             int num_segments, const kernels::SegmentCsr* csr) {
  require(static_cast<int>(destination.size()) == scores.rows(),
          ErrorCode::ShapeMismatch, "segment_softmax: one destination per row");
  for (int i : destination)
    require(0 <= i && i < num_segments, ErrorCode::IndexOutOfRange,
            "segment_softmax: destination out of range");
  auto shared = std::make_shared<kernels::SegmentCsr>(
      csr ? *csr : kernels::SegmentCsr::build(destination, num_segments));
  Tensor out(scores.rows(), scores.cols());
  kernels::segment_softmax(scores.data(), scores.rows(), scores.cols(), *shared,
                           out.data());
  check(out, "segment_softmax");
  const int sn = scores.node;
  record(out, {&scores}, [sn, out, shared](Tape& t, const Tensor& g) {
    // d x_e = y_e * (g_e - sum_seg(y * g)) per segment and column.
    const int d = out.cols();
    Tensor gs(out.rows(), d);
    const int num_seg = static_cast<int>(shared->offsets.size()) - 1;
    for (int i = 0; i < num_seg; ++i) {
      for (int j = 0; j < d; ++j) {
        double dot = 0.0;
        for (int e = shared->offsets[i]; e < shared->offsets[i + 1]; ++e) {
          const int k = shared->edges[e];
          dot += out.at(k, j) * g.at(k, j);
        }
        for (int e = shared->offsets[i]; e < shared->offsets[i + 1]; ++e) {
          const int k = shared->edges[e];
          gs.at(k, j) = out.at(k, j) * (g.at(k, j) - dot);
        }
      }
    }
    t.accumulate(sn, gs);
  });
  return out;
}

Tensor Tape::relu(const Tensor& a) {
  Tensor out(a.rows(), a.cols());
  kernels::map_serial(a.data(), out.data(), a.size(),
                      [](double x) { return x > 0.0 ? x : 0.0; });
  check(out, "relu");
  const int an = a.node;
  record(out, {&a}, [an, a](Tape& t, const Tensor& g) {
    Tensor ga(g.rows(), g.cols());
    const double* px = a.data();
    const double* pg = g.data();
    double* d = ga.data();
    for (int64_t i = 0; i < ga.size(); ++i) d[i] = px[i] > 0.0 ? pg[i] : 0.0;
    t.accumulate(an, ga);
  });
  return out;
}

Tensor Tape::leaky_relu(const Tensor& a, double slope) {
  Tensor out(a.rows(), a.cols());
  kernels::map_serial(a.data(), out.data(), a.size(),
                      [slope](double x) { return x > 0.0 ? x : slope * x; });
  check(out, "leaky_relu");
  const int an = a.node;
  record(out, {&a}, [an, a, slope](Tape& t, const Tensor& g) {
    Tensor ga(g.rows(), g.cols());
    const double* px = a.data();
    const double* pg = g.data();
    double* d = ga.data();
    for (int64_t i = 0; i < ga.size(); ++i) d[i] = px[i] > 0.0 ? pg[i] : slope * pg[i];
    t.accumulate(an, ga);
  });
  return out;
}

Tensor Tape::tanh(const Tensor& a) {
  Tensor out(a.rows(), a.cols());
  kernels::map_serial(a.data(), out.data(), a.size(),
                      [](double x) { return std::tanh(x); });
  check(out, "tanh");
  const int an = a.node;
  record(out, {&a}, [an, out](Tape& t, const Tensor& g) {
    Tensor ga(g.rows(), g.cols());
    const double* py = out.data();
    const double* pg = g.data();
    double* d = ga.data();
    for (int64_t i = 0; i < ga.size(); ++i) d[i] = pg[i] * (1.0 - py[i] * py[i]);
    t.accumulate(an, ga);
  });
  return out;
}

Tensor Tape::sigmoid(const Tensor& a) {
  Tensor out(a.rows(), a.cols());
  kernels::map_serial(a.data(), out.data(), a.size(), [](double x) {
    return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x))
                    : std::exp(x) / (1.0 + std::exp(x));
  });
  check(out, "sigmoid");
  const int an = a.node;
  record(out, {&a}, [an, out](Tape& t, const Tensor& g) {
    Tensor ga(g.rows(), g.cols());
    const double* py = out.data();
    const double* pg = g.data();
    double* d = ga.data();
    for (int64_t i = 0; i < ga.size(); ++i) d[i] = pg[i] * py[i] * (1.0 - py[i]);
    t.accumulate(an, ga);
  });
  return out;
}

Tensor Tape::dropout(const Tensor& a, double rate, Rng& rng, bool training) {
  if (!training || rate <= 0.0) return a;
  require(rate < 1.0, ErrorCode::ShapeMismatch, "dropout: rate must be < 1");
  Tensor mask(a.rows(), a.cols());
  const double keep = 1.0 - rate;
  double* pm = mask.data();
  for (int64_t i = 0; i < mask.size(); ++i)
    pm[i] = rng.uniform() < rate ? 0.0 : 1.0 / keep;
  return mul(a, mask);
}

Tensor Tape::mse(const Tensor& pred, const Tensor& target) {
  require(pred.same_shape(target), ErrorCode::ShapeMismatch, "mse: shapes differ");
  const int64_t n = pred.size();
  double acc = 0.0;
  const double* pp = pred.data();
  const double* pt = target.data();
  for (int64_t i = 0; i < n; ++i) {
    const double d = pp[i] - pt[i];
    acc += d * d;
  }
  Tensor out = Tensor::scalar(acc / static_cast<double>(n));
  check(out, "mse");
  const int pn = pred.node, tn = target.node;
  record(out, {&pred, &target}, [pn, tn, pred, target, n](Tape& t, const Tensor& g) {
    const double s = 2.0 * g.item() / static_cast<double>(n);
    if (pn >= 0) {
      Tensor gp(pred.rows(), pred.cols());
      const double* pp2 = pred.data();
      const double* pt2 = target.data();
      double* d = gp.data();
      for (int64_t i = 0; i < n; ++i) d[i] = s * (pp2[i] - pt2[i]);
      t.accumulate(pn, gp);
    }
    if (tn >= 0) {
      Tensor gt(target.rows(), target.cols());
      const double* pp2 = pred.data();
      const double* pt2 = target.data();
      double* d = gt.data();
      for (int64_t i = 0; i < n; ++i) d[i] = -s * (pp2[i] - pt2[i]);
      t.accumulate(tn, gt);
    }
  });
  return out;
}

Tensor Tape::sum_all(const Tensor& a) {
  double acc = 0.0;
  const double* pa = a.data();
  for (int64_t i = 0; i < a.size(); ++i) acc += pa[i];
  Tensor out = Tensor::scalar(acc);
  check(out, "sum_all");
  const int an = a.node, r = a.rows(), c = a.cols();
  record(out, {&a}, [an, r, c](Tape& t, const Tensor& g) {
    t.accumulate(an, Tensor::full(r, c, g.item()));
  });
  return out;
}

// ---------------------------------------------------------------------------

GradMap Tape::backward(const Tensor& loss) {
  if (!loss.is_scalar())
    throw Error(ErrorCode::NotScalar, "backward: loss must be a 1x1 tensor");
  grads_.assign(records_.size(), Tensor());
  if (loss.node >= 0) {
    grads_[loss.node] = Tensor::scalar(1.0);
    for (int i = static_cast<int>(records_.size()) - 1; i >= 0; --i) {
      if (!grads_[i].defined() || !records_[i].backward) continue;
      records_[i].backward(*this, grads_[i]);
    }
  }
  GradMap out;
  for (auto& [param, node] : watched_) {
    Tensor g = grads_[node].defined()
                   ? grads_[node]
                   : Tensor::zeros(param->value.rows(), param->value.cols());
    param->grad = g;
    out.emplace(param->name, g);
  }
  reset();
  return out;
}

void Tape::reset() {
  records_.clear();
  grads_.clear();
  watched_.clear();
}

}  // namespace socnav::ad
