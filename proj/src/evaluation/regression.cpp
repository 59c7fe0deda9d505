// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/evaluation/regression.hpp"

#include <cmath>
#include <stdexcept>

namespace mtkgnn {

RegressionMetrics regression_metrics(std::span<const double> y, std::span<const double> y_hat) {
  if (y.size() != y_hat.size()) throw std::invalid_argument("targets and predictions differ in length");
  if (y.empty()) throw std::invalid_argument("regression metrics need at least one target");
  const double n = static_cast<double>(y.size());
  double sq = 0.0;
  double abs = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - y_hat[i];
    sq += d * d;
    abs += std::fabs(d);
    mean += y[i];
  }
  mean /= n;
  double total = 0.0;
  for (double v : y) total += (v - mean) * (v - mean);

  RegressionMetrics m;
  m.n = y.size();
  m.rmse = std::sqrt(sq / n);
  m.mae = abs / n;
  if (total > 0.0) m.r2 = 1.0 - sq / total;
  return m;
}

nlohmann::json to_json(const RegressionMetrics& m) {
  nlohmann::json j{{"rmse", m.rmse}, {"mae", m.mae}, {"n", m.n}};
  j["r2"] = m.r2 ? nlohmann::json(*m.r2) : nlohmann::json(nullptr);
  return j;
}

}  // namespace mtkgnn
