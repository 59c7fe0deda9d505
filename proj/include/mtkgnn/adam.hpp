// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "mtkgnn/param_store.hpp"

namespace mtkgnn {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamMoments {
  Tensor m;
  Tensor v;
};

// Bias-corrected Adam over a fixed list of parameters. The step counter is
// shared by all parameters this instance updates; moments are created lazily
// the first time a parameter is stepped.
class Adam {
 public:
  explicit Adam(AdamConfig config = {}) : config_(config) {}

  // Applies one update to each listed parameter and zeroes its gradient.
  // Throws NumericError naming the parameter if a gradient is non-finite.
  void step(ParamStore& store, std::span<const std::string> ids);

  const AdamConfig& config() const { return config_; }
  std::int64_t steps() const { return steps_; }
  const std::map<std::string, AdamMoments>& moments() const { return moments_; }

  // Checkpoint restore.
  void restore(std::int64_t steps, std::map<std::string, AdamMoments> moments);

 private:
  AdamConfig config_;
  std::int64_t steps_ = 0;
  std::map<std::string, AdamMoments> moments_;
};

}  // namespace mtkgnn
