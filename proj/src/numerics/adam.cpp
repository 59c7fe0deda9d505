// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/adam.hpp"

#include <cmath>

#include "mtkgnn/errors.hpp"

namespace mtkgnn {

void Adam::step(ParamStore& store, std::span<const std::string> ids) {
  for (const auto& id : ids) {
    const Tensor& g = store.grad(id);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!std::isfinite(g[i])) {
        throw NumericError("non-finite gradient for parameter '" + id +
                           "' at index " + std::to_string(i));
      }
    }
  }
  ++steps_;
  const double t = static_cast<double>(steps_);
  const double bias1 = 1.0 - std::pow(config_.beta1, t);
  const double bias2 = 1.0 - std::pow(config_.beta2, t);
  for (const auto& id : ids) {
    Parameter& p = store.at(id);
    auto [it, inserted] = moments_.try_emplace(id);
    if (inserted) {
      it->second.m = Tensor::zeros_like(p.value);
      it->second.v = Tensor::zeros_like(p.value);
    }
    Tensor& m = it->second.m;
    Tensor& v = it->second.v;
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double g = p.grad[i];
      m[i] = config_.beta1 * m[i] + (1.0 - config_.beta1) * g;
      v[i] = config_.beta2 * v[i] + (1.0 - config_.beta2) * g * g;
      const double m_hat = m[i] / bias1;
      const double v_hat = v[i] / bias2;
      p.value[i] -= config_.lr * m_hat / (std::sqrt(v_hat) + config_.eps);
    }
    p.grad.fill(0.0);
  }
}

void Adam::restore(std::int64_t steps,
                   std::map<std::string, AdamMoments> moments) {
  steps_ = steps;
  moments_ = std::move(moments);
}

}  // namespace mtkgnn
