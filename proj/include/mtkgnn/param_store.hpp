// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "mtkgnn/tensor.hpp"

namespace mtkgnn {

struct Parameter {
  Tensor value;
  Tensor grad;
};

// Named trainable tensors. Iteration order is the lexicographic order of the
// ids, which keeps serialization and optimizer sweeps deterministic.
class ParamStore {
 public:
  Parameter& add(const std::string& id, Tensor value);
  bool contains(const std::string& id) const;

  Tensor& value(const std::string& id);
  const Tensor& value(const std::string& id) const;
  Tensor& grad(const std::string& id);
  const Tensor& grad(const std::string& id) const;
  Parameter& at(const std::string& id);
  const Parameter& at(const std::string& id) const;

  void zero_grads();
  std::vector<std::string> ids() const;
  std::size_t total_size() const;

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

 private:
  std::map<std::string, Parameter> params_;
};

}  // namespace mtkgnn
