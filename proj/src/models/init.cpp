// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/models/init.hpp"

#include <cmath>

#include "mtkgnn/rng.hpp"

namespace mtkgnn {

void add_embedding(ParamStore& store, const std::string& id, std::size_t rows,
                   std::size_t dim, std::uint64_t seed) {
  Rng rng = Rng(seed).fork("init").fork(id);
  const double bound = 6.0 / std::sqrt(static_cast<double>(dim));
  Tensor t({rows, dim});
  for (double& v : t.data()) v = rng.uniform(-bound, bound);
  store.add(id, std::move(t));
}

void add_weight(ParamStore& store, const std::string& id,
                std::vector<std::size_t> shape, std::size_t fan_in,
                InitScheme scheme, std::uint64_t seed) {
  Rng rng = Rng(seed).fork("init").fork(id);
  const double stddev =
      scheme == InitScheme::paper ? 1.0 : 1.0 / std::sqrt(static_cast<double>(fan_in));
  Tensor t(std::move(shape));
  for (double& v : t.data()) v = stddev * rng.normal();
  store.add(id, std::move(t));
}

void add_zeros(ParamStore& store, const std::string& id,
               std::vector<std::size_t> shape) {
  store.add(id, Tensor(std::move(shape)));
}

}  // namespace mtkgnn
