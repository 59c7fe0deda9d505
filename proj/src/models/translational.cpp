// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "models_internal.hpp"

namespace mtkgnn::detail {

// ----- TransE ---------------------------------------------------------------

void TransE::init_params(ParamStore& store, const GraphSizes& sizes,
                         std::uint64_t seed) const {
  add_embedding(store, kEntityEmb, sizes.entities, spec().dim, seed);
  add_embedding(store, kRelationEmb, sizes.relations, spec().dim, seed);
}

std::vector<std::string> TransE::param_ids() const { return {kEntityEmb, kRelationEmb}; }

std::size_t TransE::param_count(const GraphSizes& g) const {
  return (g.entities + g.relations) * spec().dim;
}

std::vector<double> TransE::forward(const ParamStore& store,
                                    std::span<const RelTriplet> batch, Mode, Rng*,
                                    ForwardCache* cache) const {
  const auto ids = split_ids(batch);
  Tensor diff = ops::gather(store.value(kEntityEmb), ids.heads);
  const Tensor r = ops::gather(store.value(kRelationEmb), ids.rels);
  const Tensor et = ops::gather(store.value(kEntityEmb), ids.tails);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] += r[i] - et[i];
  auto energies = row_norms(diff, spec().norm);
  if (cache) {
    cache->tensors = {std::move(diff)};
    cache->raw = energies;
  }
  return energies;
}

void TransE::backward(ParamStore& store, std::span<const RelTriplet> batch,
                      const ForwardCache& cache, std::span<const double> d_raw) const {
  const Tensor d = row_norms_backward(cache.tensors.at(0), cache.raw, d_raw, spec().norm);
  Tensor neg = d;
  for (double& v : neg.data()) v = -v;
  const auto ids = split_ids(batch);
  ops::scatter_add(store.grad(kEntityEmb), ids.heads, d);
  ops::scatter_add(store.grad(kRelationEmb), ids.rels, d);
  ops::scatter_add(store.grad(kEntityEmb), ids.tails, neg);
}

void TransE::project(ParamStore& store, const ProjectionNorms& norms) const {
  ops::project_rows(store.value(kEntityEmb), norms.vector);
  ops::project_rows(store.value(kRelationEmb), norms.vector);
}

// ----- TransR ---------------------------------------------------------------
// Row-vector convention: the projected difference is (e_h - e_t) M_r, which
// equals M_r' applied to column vectors; M_r is a free parameter, so the two
// conventions describe the same model.

void TransR::init_params(ParamStore& store, const GraphSizes& sizes,
                         std::uint64_t seed) const {
  const std::size_t n = spec().dim;
  add_embedding(store, kEntityEmb, sizes.entities, n, seed);
  add_embedding(store, kRelationEmb, sizes.relations, n, seed);
  Tensor m({sizes.relations, n, n});
  for (std::size_t r = 0; r < sizes.relations; ++r) {
    for (std::size_t i = 0; i < n; ++i) m[(r * n + i) * n + i] = 1.0;
  }
  store.add(kProjection, std::move(m));
}

std::vector<std::string> TransR::param_ids() const {
  return {kEntityEmb, kRelationEmb, kProjection};
}

std::size_t TransR::param_count(const GraphSizes& g) const {
  const std::size_t n = spec().dim;
  return g.entities * n + g.relations * n + g.relations * n * n;
}

std::vector<double> TransR::forward(const ParamStore& store,
                                    std::span<const RelTriplet> batch, Mode, Rng*,
                                    ForwardCache* cache) const {
  const std::size_t n = spec().dim;
  const auto ids = split_ids(batch);
  Tensor diff = ops::gather(store.value(kEntityEmb), ids.heads);
  const Tensor et = ops::gather(store.value(kEntityEmb), ids.tails);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= et[i];
  Tensor proj = ops::gather(store.value(kRelationEmb), ids.rels);
  for (const auto& [rel, pos] : group_by_relation(batch)) {
    const Tensor m = block(store.value(kProjection), rel, {n, n});
    put_rows(proj, pos, ops::matmul(take_rows(diff, pos), m));
  }
  auto energies = row_norms(proj, spec().norm);
  if (cache) {
    cache->tensors = {std::move(diff), std::move(proj)};
    cache->raw = energies;
  }
  return energies;
}

void TransR::backward(ParamStore& store, std::span<const RelTriplet> batch,
                      const ForwardCache& cache, std::span<const double> d_raw) const {
  const std::size_t n = spec().dim;
  const Tensor& diff = cache.tensors.at(0);
  const Tensor d_proj = row_norms_backward(cache.tensors.at(1), cache.raw, d_raw, spec().norm);
  Tensor d_diff = Tensor::zeros_like(diff);
  for (const auto& [rel, pos] : group_by_relation(batch)) {
    const Tensor m = block(store.value(kProjection), rel, {n, n});
    const Tensor x = take_rows(diff, pos);
    Tensor dx = Tensor::zeros_like(x), dm({n, n});
    ops::affine_backward(x, m, take_rows(d_proj, pos), &dx, dm, nullptr);
    put_rows(d_diff, pos, dx);
    add_block(store.grad(kProjection), rel, dm);
  }
  Tensor neg = d_diff;
  for (double& v : neg.data()) v = -v;
  const auto ids = split_ids(batch);
  ops::scatter_add(store.grad(kEntityEmb), ids.heads, d_diff);
  ops::scatter_add(store.grad(kEntityEmb), ids.tails, neg);
  ops::scatter_add(store.grad(kRelationEmb), ids.rels, d_proj);
}

void TransR::project(ParamStore& store, const ProjectionNorms& norms) const {
  const std::size_t n = spec().dim;
  ops::project_rows(store.value(kEntityEmb), norms.vector);
  ops::project_rows(store.value(kRelationEmb), norms.vector);
  ops::project_blocks(store.value(kProjection), n * n, norms.matrix);
}

}  // namespace mtkgnn::detail
