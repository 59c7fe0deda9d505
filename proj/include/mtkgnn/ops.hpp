// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "mtkgnn/rng.hpp"
#include "mtkgnn/tensor.hpp"

// Forward/backward kernels. Every backward accumulates (+=) into the gradient
// tensors it is handed, so callers zero them once per step and shared
// parameters collect contributions from several uses.
namespace mtkgnn::ops {

double sigmoid(double x);

// Embedding lookup: row i of the result is table row ids[i].
Tensor gather(const Tensor& table, std::span<const std::size_t> ids);
// Adds row i of `grad_rows` into row ids[i] of `table_grad`.
void scatter_add(Tensor& table_grad, std::span<const std::size_t> ids,
                 const Tensor& grad_rows);

// x [B x d] times w [d x h].
Tensor matmul(const Tensor& x, const Tensor& w);
// x [B x d] w [d x h] + b [h].
Tensor affine(const Tensor& x, const Tensor& w, const Tensor& b);
// Gradients of out = x w (+ b). Any of dx/db may be null.
void affine_backward(const Tensor& x, const Tensor& w, const Tensor& dout,
                     Tensor* dx, Tensor& dw, Tensor* db);

Tensor tanh(const Tensor& x);
// Takes the forward output, not the input.
Tensor tanh_backward(const Tensor& out, const Tensor& dout);
Tensor sigmoid(const Tensor& x);
Tensor sigmoid_backward(const Tensor& out, const Tensor& dout);

// Concatenates rank-2 tensors with equal row counts along the last axis.
Tensor concat(std::initializer_list<const Tensor*> parts);
// Inverse of concat for gradients: splits columns by the given widths.
std::vector<Tensor> split_columns(const Tensor& x,
                                  std::span<const std::size_t> widths);

Tensor hadamard(const Tensor& x, const Tensor& y);

// out[b, k] = sum_ij e1[b, i] * t[i, j, k] * e2[b, j] with t of shape
// [n x n x s].
Tensor bilinear_slices(const Tensor& e1, const Tensor& t, const Tensor& e2);
void bilinear_slices_backward(const Tensor& e1, const Tensor& t,
                              const Tensor& e2, const Tensor& dout, Tensor* de1,
                              Tensor* dt, Tensor* de2);

struct DropoutResult {
  Tensor out;
  // Per-unit multiplier: 0 for dropped units, 1/(1-rate) for survivors.
  // Empty when dropout is the identity.
  Tensor mask;
};

// Inverted dropout. In eval mode, or with rate 0, returns x unchanged.
DropoutResult dropout(const Tensor& x, double rate, Rng& rng, bool training);
Tensor dropout_backward(const DropoutResult& forward, const Tensor& dout);

// Rescales every row whose L2 norm exceeds max_norm onto the ball surface.
void project_rows(Tensor& t, double max_norm);
// Rescales consecutive blocks of `block` elements (e.g. per-relation
// matrices stored back to back) to Frobenius norm <= max_norm.
void project_blocks(Tensor& t, std::size_t block, double max_norm);

}  // namespace mtkgnn::ops
