// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "models_internal.hpp"

namespace mtkgnn::detail {

// ----- CP -------------------------------------------------------------------

void Cp::init_params(ParamStore& store, const GraphSizes& sizes, std::uint64_t seed) const {
  add_embedding(store, kEntityEmb, sizes.entities, spec().dim, seed);
  add_embedding(store, kRelationEmb, sizes.relations, spec().dim, seed);
}

std::vector<std::string> Cp::param_ids() const { return {kEntityEmb, kRelationEmb}; }

std::size_t Cp::param_count(const GraphSizes& g) const {
  return (g.entities + g.relations) * spec().dim;
}

std::vector<double> Cp::forward(const ParamStore& store, std::span<const RelTriplet> batch,
                                Mode, Rng*, ForwardCache* cache) const {
  const auto ids = split_ids(batch);
  Tensor eh = ops::gather(store.value(kEntityEmb), ids.heads);
  Tensor et = ops::gather(store.value(kEntityEmb), ids.tails);
  Tensor r = ops::gather(store.value(kRelationEmb), ids.rels);
  Tensor prod = ops::hadamard(ops::hadamard(eh, r), et);
  std::vector<double> out(batch.size(), 0.0);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    for (double v : prod.row(i)) out[i] += v;
  }
  if (cache) cache->tensors = {std::move(eh), std::move(r), std::move(et)};
  return out;
}

void Cp::backward(ParamStore& store, std::span<const RelTriplet> batch,
                  const ForwardCache& cache, std::span<const double> d_raw) const {
  const Tensor& eh = cache.tensors.at(0);
  const Tensor& r = cache.tensors.at(1);
  const Tensor& et = cache.tensors.at(2);
  Tensor dh = ops::hadamard(r, et), dr = ops::hadamard(eh, et), dt = ops::hadamard(eh, r);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    for (auto* g : {&dh, &dr, &dt}) {
      for (double& v : g->row(i)) v *= d_raw[i];
    }
  }
  const auto ids = split_ids(batch);
  ops::scatter_add(store.grad(kEntityEmb), ids.heads, dh);
  ops::scatter_add(store.grad(kEntityEmb), ids.tails, dt);
  ops::scatter_add(store.grad(kRelationEmb), ids.rels, dr);
}

void Cp::project(ParamStore& store, const ProjectionNorms& norms) const {
  ops::project_rows(store.value(kEntityEmb), norms.vector);
  ops::project_rows(store.value(kRelationEmb), norms.vector);
}

// ----- RESCAL ---------------------------------------------------------------

void Rescal::init_params(ParamStore& store, const GraphSizes& sizes,
                         std::uint64_t seed) const {
  const std::size_t n = spec().dim;
  add_embedding(store, kEntityEmb, sizes.entities, n, seed);
  add_weight(store, kCore, {sizes.relations, n, n}, n, spec().init, seed);
}

std::vector<std::string> Rescal::param_ids() const { return {kEntityEmb, kCore}; }

std::size_t Rescal::param_count(const GraphSizes& g) const {
  const std::size_t n = spec().dim;
  return g.entities * n + g.relations * n * n;
}

std::vector<double> Rescal::forward(const ParamStore& store,
                                    std::span<const RelTriplet> batch, Mode, Rng*,
                                    ForwardCache* cache) const {
  const std::size_t n = spec().dim;
  const auto ids = split_ids(batch);
  Tensor eh = ops::gather(store.value(kEntityEmb), ids.heads);
  Tensor et = ops::gather(store.value(kEntityEmb), ids.tails);
  std::vector<double> out(batch.size(), 0.0);
  for (const auto& [rel, pos] : group_by_relation(batch)) {
    const Tensor core = block(store.value(kCore), rel, {n, n, 1});
    const Tensor s = ops::bilinear_slices(take_rows(eh, pos), core, take_rows(et, pos));
    for (std::size_t i = 0; i < pos.size(); ++i) out[pos[i]] = s[i];
  }
  if (cache) cache->tensors = {std::move(eh), std::move(et)};
  return out;
}

void Rescal::backward(ParamStore& store, std::span<const RelTriplet> batch,
                      const ForwardCache& cache, std::span<const double> d_raw) const {
  const std::size_t n = spec().dim;
  const Tensor& eh = cache.tensors.at(0);
  const Tensor& et = cache.tensors.at(1);
  Tensor dh = Tensor::zeros_like(eh), dt = Tensor::zeros_like(et);
  for (const auto& [rel, pos] : group_by_relation(batch)) {
    const Tensor core = block(store.value(kCore), rel, {n, n, 1});
    Tensor g({pos.size(), 1});
    for (std::size_t i = 0; i < pos.size(); ++i) g[i] = d_raw[pos[i]];
    const Tensor h = take_rows(eh, pos), t = take_rows(et, pos);
    Tensor gh = Tensor::zeros_like(h), gt = Tensor::zeros_like(t), gcore({n, n, 1});
    ops::bilinear_slices_backward(h, core, t, g, &gh, &gcore, &gt);
    put_rows(dh, pos, gh);
    put_rows(dt, pos, gt);
    add_block(store.grad(kCore), rel, gcore);
  }
  const auto ids = split_ids(batch);
  ops::scatter_add(store.grad(kEntityEmb), ids.heads, dh);
  ops::scatter_add(store.grad(kEntityEmb), ids.tails, dt);
}

void Rescal::project(ParamStore& store, const ProjectionNorms& norms) const {
  const std::size_t n = spec().dim;
  ops::project_rows(store.value(kEntityEmb), norms.vector);
  ops::project_blocks(store.value(kCore), n * n, norms.matrix);
}

}  // namespace mtkgnn::detail
