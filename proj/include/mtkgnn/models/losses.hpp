// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mtkgnn {

inline constexpr double kProbEpsilon = 1e-12;

struct LossAndGrad {
  double loss = 0.0;
  std::vector<double> grad;  // d loss / d input, one entry per example
};

// Summed binary cross entropy over probabilities clamped to [eps, 1 - eps].
double cross_entropy(std::span<const double> probs, std::span<const int> labels);

// Cross entropy of sigmoid(logits), evaluated from the logits without
// clamping; grad is sigmoid(logit) - label.
LossAndGrad sigmoid_cross_entropy(std::span<const double> logits,
                                  std::span<const int> labels);

struct HingeLoss {
  double loss = 0.0;
  std::vector<double> d_pos;
  std::vector<double> d_neg;
};

// sum_i max(0, pos_i + margin - neg_i) over paired energies.
HingeLoss pairwise_hinge(std::span<const double> pos, std::span<const double> neg,
                         double margin);

// Mean squared error over entries with mask != 0; zero (with zero gradient)
// when every entry is masked.
LossAndGrad masked_mse(std::span<const double> preds, std::span<const double> targets,
                       std::span<const std::uint8_t> mask);

}  // namespace mtkgnn
