// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/param_store.hpp"

#include <stdexcept>

namespace mtkgnn {

Parameter& ParamStore::add(const std::string& id, Tensor value) {
  if (params_.count(id)) {
    throw std::invalid_argument("parameter '" + id + "' already exists");
  }
  Tensor grad = Tensor::zeros_like(value);
  return params_.emplace(id, Parameter{std::move(value), std::move(grad)})
      .first->second;
}

bool ParamStore::contains(const std::string& id) const {
  return params_.count(id) != 0;
}

Parameter& ParamStore::at(const std::string& id) {
  auto it = params_.find(id);
  if (it == params_.end()) {
    throw std::out_of_range("unknown parameter '" + id + "'");
  }
  return it->second;
}

const Parameter& ParamStore::at(const std::string& id) const {
  auto it = params_.find(id);
  if (it == params_.end()) {
    throw std::out_of_range("unknown parameter '" + id + "'");
  }
  return it->second;
}

Tensor& ParamStore::value(const std::string& id) { return at(id).value; }
const Tensor& ParamStore::value(const std::string& id) const {
  return at(id).value;
}
Tensor& ParamStore::grad(const std::string& id) { return at(id).grad; }
const Tensor& ParamStore::grad(const std::string& id) const {
  return at(id).grad;
}

void ParamStore::zero_grads() {
  for (auto& [id, p] : params_) p.grad.fill(0.0);
}

std::vector<std::string> ParamStore::ids() const {
  std::vector<std::string> out;
  out.reserve(params_.size());
  for (const auto& [id, p] : params_) out.push_back(id);
  return out;
}

std::size_t ParamStore::total_size() const {
  std::size_t n = 0;
  for (const auto& [id, p] : params_) n += p.value.size();
  return n;
}

}  // namespace mtkgnn
