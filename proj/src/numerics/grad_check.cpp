// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mtkgnn/rng.hpp"

namespace mtkgnn {

GradCheckResult grad_check(ParamStore& store, const LossFn& loss,
                           const GradCheckOptions& options) {
  GradCheckResult result;
  store.zero_grads();
  loss(true);

  Rng rng = Rng(options.seed).fork("grad-check");
  for (auto& [id, param] : store) {
    const std::size_t n = param.value.size();
    std::vector<std::size_t> coords;
    if (n <= options.full_check_limit) {
      coords.resize(n);
      std::iota(coords.begin(), coords.end(), std::size_t{0});
    } else {
      coords.reserve(options.sample_size);
      for (std::size_t i = 0; i < options.sample_size; ++i) {
        coords.push_back(rng.uniform_index(n));
      }
    }
    for (std::size_t i : coords) {
      const double original = param.value[i];
      param.value[i] = original + options.h;
      const double plus = loss(false);
      param.value[i] = original - options.h;
      const double minus = loss(false);
      param.value[i] = original;

      const double numeric = (plus - minus) / (2.0 * options.h);
      const double analytic = param.grad[i];
      const double denom =
          std::max(std::abs(analytic) + std::abs(numeric), 1e-6);
      const double rel = std::abs(analytic - numeric) / denom;
      ++result.checked;
      if (rel > result.max_rel_error) {
        result.max_rel_error = rel;
        result.worst_param = id;
        result.worst_index = i;
        result.worst_analytic = analytic;
        result.worst_numeric = numeric;
      }
    }
  }
  store.zero_grads();
  return result;
}

}  // namespace mtkgnn
