// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/ops.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "mtkgnn/errors.hpp"

namespace mtkgnn::ops {

namespace {

[[noreturn]] void shape_error(const char* op, const Tensor& a, const Tensor& b) {
  std::ostringstream os;
  os << op << ": shape mismatch " << shape_string(a.shape()) << " vs "
     << shape_string(b.shape());
  throw std::invalid_argument(os.str());
}

void require_rank2(const char* op, const Tensor& t) {
  if (t.rank() != 2) {
    throw std::invalid_argument(std::string(op) + ": expected a matrix, got " +
                                shape_string(t.shape()));
  }
}

}  // namespace

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Tensor gather(const Tensor& table, std::span<const std::size_t> ids) {
  require_rank2("gather", table);
  const std::size_t n = table.dim(1);
  Tensor out({ids.size(), n});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= table.dim(0)) {
      throw std::out_of_range("gather: id " + std::to_string(ids[i]) +
                              " out of range for table with " +
                              std::to_string(table.dim(0)) + " rows");
    }
    const auto src = table.row(ids[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

void scatter_add(Tensor& table_grad, std::span<const std::size_t> ids,
                 const Tensor& grad_rows) {
  if (grad_rows.rows() != ids.size() ||
      grad_rows.row_size() != table_grad.row_size()) {
    shape_error("scatter_add", table_grad, grad_rows);
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= table_grad.rows()) {
      throw std::out_of_range("scatter_add: id " + std::to_string(ids[i]) +
                              " out of range");
    }
    auto dst = table_grad.row(ids[i]);
    const auto src = grad_rows.row(i);
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
  }
}

Tensor matmul(const Tensor& x, const Tensor& w) {
  require_rank2("matmul", x);
  require_rank2("matmul", w);
  if (x.dim(1) != w.dim(0)) shape_error("matmul", x, w);
  const std::size_t batch = x.dim(0), d = x.dim(1), h = w.dim(1);
  Tensor out({batch, h});
  const double* wp = w.data().data();
  for (std::size_t b = 0; b < batch; ++b) {
    const double* xr = x.data().data() + b * d;
    double* orow = out.data().data() + b * h;
    for (std::size_t k = 0; k < d; ++k) {
      const double xv = xr[k];
      if (xv == 0.0) continue;
      const double* wr = wp + k * h;
      for (std::size_t j = 0; j < h; ++j) orow[j] += xv * wr[j];
    }
  }
  return out;
}

Tensor affine(const Tensor& x, const Tensor& w, const Tensor& b) {
  Tensor out = matmul(x, w);
  if (b.size() != out.dim(1)) shape_error("affine", w, b);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] += b[j];
  }
  return out;
}

void affine_backward(const Tensor& x, const Tensor& w, const Tensor& dout,
                     Tensor* dx, Tensor& dw, Tensor* db) {
  const std::size_t batch = x.dim(0), d = x.dim(1), h = w.dim(1);
  if (dout.rank() != 2 || dout.dim(0) != batch || dout.dim(1) != h) {
    shape_error("affine_backward", x, dout);
  }
  if (!dw.same_shape(w)) shape_error("affine_backward", w, dw);
  const double* wp = w.data().data();
  double* dwp = dw.data().data();
  for (std::size_t b = 0; b < batch; ++b) {
    const double* xr = x.data().data() + b * d;
    const double* gr = dout.data().data() + b * h;
    for (std::size_t k = 0; k < d; ++k) {
      const double xv = xr[k];
      if (xv == 0.0) continue;
      double* dwr = dwp + k * h;
      for (std::size_t j = 0; j < h; ++j) dwr[j] += xv * gr[j];
    }
    if (dx != nullptr) {
      double* dxr = dx->data().data() + b * d;
      for (std::size_t k = 0; k < d; ++k) {
        const double* wr = wp + k * h;
        double acc = 0.0;
        for (std::size_t j = 0; j < h; ++j) acc += gr[j] * wr[j];
        dxr[k] += acc;
      }
    }
    if (db != nullptr) {
      for (std::size_t j = 0; j < h; ++j) (*db)[j] += gr[j];
    }
  }
}

Tensor tanh(const Tensor& x) {
  Tensor out = x;
  for (double& v : out.data()) v = std::tanh(v);
  return out;
}

Tensor tanh_backward(const Tensor& out, const Tensor& dout) {
  if (!out.same_shape(dout)) shape_error("tanh_backward", out, dout);
  Tensor dx = dout;
  for (std::size_t i = 0; i < dx.size(); ++i) dx[i] *= 1.0 - out[i] * out[i];
  return dx;
}

Tensor sigmoid(const Tensor& x) {
  Tensor out = x;
  for (double& v : out.data()) v = sigmoid(v);
  return out;
}

Tensor sigmoid_backward(const Tensor& out, const Tensor& dout) {
  if (!out.same_shape(dout)) shape_error("sigmoid_backward", out, dout);
  Tensor dx = dout;
  for (std::size_t i = 0; i < dx.size(); ++i) dx[i] *= out[i] * (1.0 - out[i]);
  return dx;
}

Tensor concat(std::initializer_list<const Tensor*> parts) {
  std::size_t rows = 0, cols = 0;
  bool first = true;
  for (const Tensor* p : parts) {
    require_rank2("concat", *p);
    if (first) {
      rows = p->dim(0);
      first = false;
    } else if (p->dim(0) != rows) {
      shape_error("concat", **parts.begin(), *p);
    }
    cols += p->dim(1);
  }
  Tensor out({rows, cols});
  for (std::size_t r = 0; r < rows; ++r) {
    double* dst = out.row(r).data();
    for (const Tensor* p : parts) {
      const auto src = p->row(r);
      dst = std::copy(src.begin(), src.end(), dst);
    }
  }
  return out;
}

std::vector<Tensor> split_columns(const Tensor& x,
                                  std::span<const std::size_t> widths) {
  require_rank2("split_columns", x);
  std::size_t total = 0;
  for (std::size_t w : widths) total += w;
  if (total != x.dim(1)) {
    throw std::invalid_argument("split_columns: widths sum to " +
                                std::to_string(total) + ", tensor has " +
                                std::to_string(x.dim(1)) + " columns");
  }
  std::vector<Tensor> out;
  out.reserve(widths.size());
  for (std::size_t w : widths) out.emplace_back(std::vector<std::size_t>{x.dim(0), w});
  for (std::size_t r = 0; r < x.dim(0); ++r) {
    const double* src = x.row(r).data();
    for (std::size_t p = 0; p < widths.size(); ++p) {
      std::copy(src, src + widths[p], out[p].row(r).begin());
      src += widths[p];
    }
  }
  return out;
}

Tensor hadamard(const Tensor& x, const Tensor& y) {
  if (!x.same_shape(y)) shape_error("hadamard", x, y);
  Tensor out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= y[i];
  return out;
}

Tensor bilinear_slices(const Tensor& e1, const Tensor& t, const Tensor& e2) {
  require_rank2("bilinear_slices", e1);
  if (!e1.same_shape(e2)) shape_error("bilinear_slices", e1, e2);
  const std::size_t batch = e1.dim(0), n = e1.dim(1);
  if (t.rank() != 3 || t.dim(0) != n || t.dim(1) != n) {
    shape_error("bilinear_slices", e1, t);
  }
  const std::size_t s = t.dim(2);
  Tensor out({batch, s});
  const double* tp = t.data().data();
  for (std::size_t b = 0; b < batch; ++b) {
    const double* x = e1.row(b).data();
    const double* y = e2.row(b).data();
    double* o = out.row(b).data();
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double xy = x[i] * y[j];
        const double* tij = tp + (i * n + j) * s;
        for (std::size_t k = 0; k < s; ++k) o[k] += xy * tij[k];
      }
    }
  }
  return out;
}

void bilinear_slices_backward(const Tensor& e1, const Tensor& t,
                              const Tensor& e2, const Tensor& dout, Tensor* de1,
                              Tensor* dt, Tensor* de2) {
  const std::size_t batch = e1.dim(0), n = e1.dim(1), s = t.dim(2);
  if (dout.rank() != 2 || dout.dim(0) != batch || dout.dim(1) != s) {
    shape_error("bilinear_slices_backward", t, dout);
  }
  const double* tp = t.data().data();
  for (std::size_t b = 0; b < batch; ++b) {
    const double* x = e1.row(b).data();
    const double* y = e2.row(b).data();
    const double* g = dout.row(b).data();
    double* dx = de1 ? de1->row(b).data() : nullptr;
    double* dy = de2 ? de2->row(b).data() : nullptr;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double* tij = tp + (i * n + j) * s;
        double gt = 0.0;  // sum_k g[k] t[i,j,k]
        for (std::size_t k = 0; k < s; ++k) gt += g[k] * tij[k];
        if (dx) dx[i] += gt * y[j];
        if (dy) dy[j] += gt * x[i];
        if (dt) {
          double* dtij = dt->data().data() + (i * n + j) * s;
          const double xy = x[i] * y[j];
          for (std::size_t k = 0; k < s; ++k) dtij[k] += xy * g[k];
        }
      }
    }
  }
}

DropoutResult dropout(const Tensor& x, double rate, Rng& rng, bool training) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw std::invalid_argument("dropout: rate must lie in [0, 1)");
  }
  if (!training || rate == 0.0) return {x, Tensor()};
  DropoutResult result{x, Tensor::zeros_like(x)};
  const double keep_scale = 1.0 / (1.0 - rate);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double m = rng.uniform() < rate ? 0.0 : keep_scale;
    result.mask[i] = m;
    result.out[i] *= m;
  }
  return result;
}

Tensor dropout_backward(const DropoutResult& forward, const Tensor& dout) {
  if (forward.mask.empty()) return dout;
  return hadamard(dout, forward.mask);
}

namespace {
// Rescaled rows land within a few ulps of max_norm; the slack keeps a second
// projection from touching them again.
bool exceeds(double norm, double max_norm) { return norm > max_norm * (1.0 + 1e-12); }
}  // namespace

void project_rows(Tensor& t, double max_norm) {
  if (!(max_norm > 0)) throw std::invalid_argument("project_rows: max_norm <= 0");
  for (std::size_t r = 0; r < t.rows(); ++r) {
    auto row = t.row(r);
    double sq = 0.0;
    for (double v : row) sq += v * v;
    const double norm = std::sqrt(sq);
    if (exceeds(norm, max_norm)) {
      const double scale = max_norm / norm;
      for (double& v : row) v *= scale;
    }
  }
}

void project_blocks(Tensor& t, std::size_t block, double max_norm) {
  if (!(max_norm > 0)) {
    throw std::invalid_argument("project_blocks: max_norm <= 0");
  }
  if (block == 0 || t.size() % block != 0) {
    throw std::invalid_argument("project_blocks: block size does not divide tensor");
  }
  auto data = t.data();
  for (std::size_t start = 0; start < data.size(); start += block) {
    double sq = 0.0;
    for (std::size_t i = start; i < start + block; ++i) sq += data[i] * data[i];
    const double norm = std::sqrt(sq);
    if (exceeds(norm, max_norm)) {
      const double scale = max_norm / norm;
      for (std::size_t i = start; i < start + block; ++i) data[i] *= scale;
    }
  }
}

}  // namespace mtkgnn::ops
