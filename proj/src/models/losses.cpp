// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/models/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mtkgnn/ops.hpp"

namespace mtkgnn {

namespace {
void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": length mismatch");
}
}  // namespace

double cross_entropy(std::span<const double> probs, std::span<const int> labels) {
  require_same(probs.size(), labels.size(), "cross_entropy");
  double loss = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = std::clamp(probs[i], kProbEpsilon, 1.0 - kProbEpsilon);
    loss -= labels[i] ? std::log(p) : std::log(1.0 - p);
  }
  return loss;
}

LossAndGrad sigmoid_cross_entropy(std::span<const double> logits,
                                  std::span<const int> labels) {
  require_same(logits.size(), labels.size(), "sigmoid_cross_entropy");
  LossAndGrad out;
  out.grad.resize(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const double x = logits[i];
    const double t = labels[i] ? 1.0 : 0.0;
    // softplus(x) - t x, without forming log(1 - sigmoid(x)).
    out.loss += std::max(x, 0.0) - t * x + std::log1p(std::exp(-std::abs(x)));
    out.grad[i] = ops::sigmoid(x) - t;
  }
  return out;
}

HingeLoss pairwise_hinge(std::span<const double> pos, std::span<const double> neg,
                         double margin) {
  require_same(pos.size(), neg.size(), "pairwise_hinge");
  HingeLoss out;
  out.d_pos.assign(pos.size(), 0.0);
  out.d_neg.assign(pos.size(), 0.0);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const double slack = pos[i] + margin - neg[i];
    if (slack > 0.0) {
      out.loss += slack;
      out.d_pos[i] = 1.0;
      out.d_neg[i] = -1.0;
    }
  }
  return out;
}

LossAndGrad masked_mse(std::span<const double> preds, std::span<const double> targets,
                       std::span<const std::uint8_t> mask) {
  require_same(preds.size(), targets.size(), "masked_mse");
  require_same(preds.size(), mask.size(), "masked_mse");
  LossAndGrad out;
  out.grad.assign(preds.size(), 0.0);
  std::size_t count = 0;
  for (auto m : mask) count += m != 0;
  if (count == 0) return out;
  const double inv = 1.0 / static_cast<double>(count);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (!mask[i]) continue;
    const double diff = preds[i] - targets[i];
    out.loss += diff * diff * inv;
    out.grad[i] = 2.0 * diff * inv;
  }
  return out;
}

}  // namespace mtkgnn
