// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mtkgnn/data/dataset.hpp"
#include "mtkgnn/evaluation/regression.hpp"
#include "mtkgnn/models/mt_kgnn.hpp"
#include "mtkgnn/tensor.hpp"

namespace mtkgnn {

struct ProbeConfig {
  std::vector<double> lrs = {1e-2, 1e-3, 1e-4};
  std::size_t epochs = 25;
  // Clip predictions into [0, 1] before scoring.
  bool clip = false;

  void validate() const;
};

void to_json(nlohmann::json& j, const ProbeConfig& c);
void from_json(const nlohmann::json& j, ProbeConfig& c);

struct AttributeScores {
  RegressionMetrics metrics;
  std::vector<double> targets;      // in test-split order
  std::vector<double> predictions;  // aligned with targets
  std::vector<std::string> warnings;
};

struct ProbeResult : AttributeScores {
  std::map<AttributeId, double> chosen_lr;
};

// Per attribute, fits w.e + b to the normalized training targets by plain
// SGD (zero init, squared error, one shuffled pass per epoch) for each
// learning rate in the grid and keeps the one with the lowest dev RMSE
// (training RMSE when the attribute has no dev triplets). Test metrics are
// pooled over all test triplets of attributes that could be fitted.
// `embeddings` is [entities x d] with d >= 1; throws DataError otherwise.
ProbeResult probe_linear_regression(const Tensor& embeddings, const Dataset& data,
                                    const ProbeConfig& cfg, std::uint64_t seed);

// MT-KGNN's own attribute predictions on `split`.
AttributeScores predict_attributes(const MtKgnn& net, const ParamStore& params,
                                   const Dataset& data, Split split);

// One U[0, 1) guess per test attribute triplet.
AttributeScores r_guess(const Dataset& data, std::uint64_t seed);
std::vector<double> r_guess(std::size_t n, std::uint64_t seed);

// Entity embeddings drawn from U(-0.01, 0.01).
Tensor r_init_embeddings(std::size_t entities, std::size_t dim, std::uint64_t seed);

// Metrics on raw attribute values: targets and predictions mapped back
// through the normalizer.
RegressionMetrics denormalized_metrics(const AttributeScores& scores, const Dataset& data,
                                       Split split);

}  // namespace mtkgnn
