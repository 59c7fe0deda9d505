// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtkgnn/data/dataset.hpp"
#include "mtkgnn/evaluation/probe.hpp"
#include "mtkgnn/training/config.hpp"

namespace mtkgnn {

// Everything a command needs beyond its paths. Defaults follow the
// reference hyperparameters; a config file overrides defaults and flags
// override the file.
struct RunConfig {
  TrainConfig train;
  ProbeConfig probe;
  SplitRatios ratios;
  bool margin_sweep = false;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  std::vector<std::string> models = {"mt-kgnn", "er-mlp"};
};

nlohmann::ordered_json to_json(const RunConfig& c);
// Missing fields keep their defaults; unknown top-level fields are a
// UsageError.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);
void write_run_config(const RunConfig& c, const std::filesystem::path& path);

// $MTKGNN_OUT when set and non-empty, else "out".
std::filesystem::path default_out_root();

}  // namespace mtkgnn
