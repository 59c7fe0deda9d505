// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtkgnn/evaluation/classification.hpp"
#include "mtkgnn/evaluation/regression.hpp"

namespace mtkgnn {

struct EvalReport {
  std::string task;   // "triplet_classification" or "attribute_regression"
  std::string split = "test";
  std::string model;
  std::uint64_t seed = 0;
  std::map<std::string, double> metrics;
  std::optional<double> threshold;
  std::vector<std::string> warnings;
};

EvalReport classification_report(const ClassificationResult& r, std::string model,
                                 std::uint64_t seed);
EvalReport regression_report(const RegressionMetrics& m, std::string model,
                             std::uint64_t seed);

nlohmann::ordered_json to_json(const EvalReport& r);
EvalReport report_from_json(const nlohmann::json& j);
// Two-column text table.
std::string format_report(const EvalReport& r);

}  // namespace mtkgnn
