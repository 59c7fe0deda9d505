// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "mtkgnn/param_store.hpp"

namespace mtkgnn {

struct GradCheckOptions {
  double h = 1e-5;
  // Tensors larger than this are checked on a random coordinate sample.
  std::size_t full_check_limit = 10000;
  std::size_t sample_size = 256;
  std::uint64_t seed = 0;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t checked = 0;
};

// `loss` evaluates the scalar loss at the store's current values. When its
// argument is true it must also accumulate analytic gradients into the
// store (the checker zeroes them first).
//
// Relative error per coordinate is |a - n| / max(|a| + |n|, 1e-6) where a is
// the backprop gradient and n the central difference.
using LossFn = std::function<double(bool with_grad)>;

GradCheckResult grad_check(ParamStore& store, const LossFn& loss,
                           const GradCheckOptions& options = {});

}  // namespace mtkgnn
