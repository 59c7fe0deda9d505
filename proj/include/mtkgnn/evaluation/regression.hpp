// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>

#include <json.hpp>

namespace mtkgnn {

struct RegressionMetrics {
  double rmse = 0.0;
  double mae = 0.0;
  // Coefficient of determination 1 - SS_res / SS_tot. Missing when the
  // targets are constant.
  std::optional<double> r2;
  std::size_t n = 0;
};

// Throws std::invalid_argument on empty or mismatched inputs.
RegressionMetrics regression_metrics(std::span<const double> y, std::span<const double> y_hat);

nlohmann::json to_json(const RegressionMetrics& m);

}  // namespace mtkgnn
