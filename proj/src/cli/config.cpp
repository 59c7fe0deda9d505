// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/cli/config.hpp"

#include <cstdlib>
#include <fstream>

#include "mtkgnn/errors.hpp"

namespace mtkgnn {

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["train"] = nlohmann::json(c.train);
  j["probe"] = nlohmann::json(c.probe);
  j["ratios"] = {{"train", c.ratios.train}, {"dev", c.ratios.dev}, {"test", c.ratios.test}};
  j["margin_sweep"] = c.margin_sweep;
  j["seeds"] = c.seeds;
  j["models"] = c.models;
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "train" && key != "probe" && key != "ratios" && key != "margin_sweep" &&
        key != "seeds" && key != "models") {
      throw UsageError("unknown config field '" + key + "'");
    }
  }
  RunConfig c;
  try {
    if (j.contains("train")) c.train = j.at("train").get<TrainConfig>();
    if (j.contains("probe")) c.probe = j.at("probe").get<ProbeConfig>();
    if (j.contains("ratios")) {
      const auto& r = j.at("ratios");
      c.ratios.train = r.value("train", c.ratios.train);
      c.ratios.dev = r.value("dev", c.ratios.dev);
      c.ratios.test = r.value("test", c.ratios.test);
    }
    c.margin_sweep = j.value("margin_sweep", c.margin_sweep);
    c.seeds = j.value("seeds", c.seeds);
    c.models = j.value("models", c.models);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return run_config_from_json(j);
}

void write_run_config(const RunConfig& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << to_json(c).dump(2) << '\n';
}

std::filesystem::path default_out_root() {
  const char* env = std::getenv("MTKGNN_OUT");
  if (env && *env) return env;
  return "out";
}

}  // namespace mtkgnn
