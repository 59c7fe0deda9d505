// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/evaluation/report.hpp"

#include <cmath>
#include <cstdio>

#include "mtkgnn/errors.hpp"

namespace mtkgnn {

EvalReport classification_report(const ClassificationResult& r, std::string model,
                                 std::uint64_t seed) {
  EvalReport out;
  out.task = "triplet_classification";
  out.model = std::move(model);
  out.seed = seed;
  out.threshold = r.threshold;
  out.metrics["accuracy"] = r.test_accuracy;
  out.metrics["auc"] = r.test_auc;
  out.metrics["dev_accuracy"] = r.dev_accuracy;
  return out;
}

EvalReport regression_report(const RegressionMetrics& m, std::string model,
                             std::uint64_t seed) {
  EvalReport out;
  out.task = "attribute_regression";
  out.model = std::move(model);
  out.seed = seed;
  out.metrics["rmse"] = m.rmse;
  out.metrics["mae"] = m.mae;
  if (m.r2) {
    out.metrics["r2"] = *m.r2;
  } else {
    out.warnings.push_back("r2 undefined for constant targets");
  }
  return out;
}

nlohmann::ordered_json to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["task"] = r.task;
  j["split"] = r.split;
  j["model"] = r.model;
  j["seed"] = r.seed;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  j["metrics"] = metrics;
  // JSON has no infinity; the sentinel thresholds are written as strings.
  if (r.threshold) {
    const double t = *r.threshold;
    if (std::isfinite(t)) {
      j["threshold"] = t;
    } else {
      j["threshold"] = t > 0 ? "inf" : "-inf";
    }
  }
  j["warnings"] = r.warnings;
  return j;
}

EvalReport report_from_json(const nlohmann::json& j) {
  try {
    EvalReport r;
    r.task = j.at("task").get<std::string>();
    r.split = j.at("split").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("metrics").items()) r.metrics[k] = v.get<double>();
    if (j.contains("threshold")) {
      const auto& t = j.at("threshold");
      if (t.is_string()) {
        r.threshold = t.get<std::string>() == "inf" ? INFINITY : -INFINITY;
      } else {
        r.threshold = t.get<double>();
      }
    }
    r.warnings = j.value("warnings", std::vector<std::string>{});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

std::string format_report(const EvalReport& r) {
  std::string out = r.task + " (" + r.model + ", seed " + std::to_string(r.seed) + ", " +
                    r.split + ")\n";
  char buf[64];
  for (const auto& [k, v] : r.metrics) {
    std::snprintf(buf, sizeof buf, "  %-14s %.4f\n", k.c_str(), v);
    out += buf;
  }
  if (r.threshold) {
    std::snprintf(buf, sizeof buf, "  %-14s %.6g\n", "threshold", *r.threshold);
    out += buf;
  }
  for (const auto& w : r.warnings) out += "  warning: " + w + "\n";
  return out;
}

}  // namespace mtkgnn
