// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "models_internal.hpp"

namespace mtkgnn::detail {

// Relation-indexed parameters are stored with the relation as leading axis:
// W [R x n x n x s], V [R x 2n x s], b [R x s], u [R x s].

void Ntn::init_params(ParamStore& store, const GraphSizes& sizes, std::uint64_t seed) const {
  const std::size_t n = spec().dim, s = spec().ntn_slices, r = sizes.relations;
  add_embedding(store, kEntityEmb, sizes.entities, n, seed);
  add_weight(store, kTensor, {r, n, n, s}, n, spec().init, seed);
  add_weight(store, kLinear, {r, 2 * n, s}, 2 * n, spec().init, seed);
  add_zeros(store, kBias, {r, s});
  add_weight(store, kOut, {r, s}, s, spec().init, seed);
}

std::vector<std::string> Ntn::param_ids() const {
  return {kEntityEmb, kTensor, kLinear, kBias, kOut};
}

std::size_t Ntn::param_count(const GraphSizes& g) const {
  const std::size_t n = spec().dim, s = spec().ntn_slices;
  return g.entities * n + g.relations * (n * n * s + 2 * n * s + 2 * s);
}

std::vector<double> Ntn::forward(const ParamStore& store, std::span<const RelTriplet> batch,
                                 Mode, Rng*, ForwardCache* cache) const {
  const std::size_t n = spec().dim, s = spec().ntn_slices;
  const auto ids = split_ids(batch);
  Tensor eh = ops::gather(store.value(kEntityEmb), ids.heads);
  Tensor et = ops::gather(store.value(kEntityEmb), ids.tails);
  Tensor act({batch.size(), s});
  std::vector<double> out(batch.size(), 0.0);
  for (const auto& [rel, pos] : group_by_relation(batch)) {
    const Tensor w = block(store.value(kTensor), rel, {n, n, s});
    const Tensor v = block(store.value(kLinear), rel, {2 * n, s});
    const Tensor b = block(store.value(kBias), rel, {s});
    const Tensor u = block(store.value(kOut), rel, {s, 1});
    const Tensor h = take_rows(eh, pos), t = take_rows(et, pos);
    Tensor pre = ops::bilinear_slices(h, w, t);
    const Tensor lin = ops::affine(ops::concat({&h, &t}), v, b);
    for (std::size_t i = 0; i < pre.size(); ++i) pre[i] += lin[i];
    const Tensor a = ops::tanh(pre);
    const Tensor logits = ops::matmul(a, u);
    for (std::size_t i = 0; i < pos.size(); ++i) out[pos[i]] = logits[i];
    put_rows(act, pos, a);
  }
  if (cache) cache->tensors = {std::move(eh), std::move(et), std::move(act)};
  return out;
}

void Ntn::backward(ParamStore& store, std::span<const RelTriplet> batch,
                   const ForwardCache& cache, std::span<const double> d_raw) const {
  const std::size_t n = spec().dim, s = spec().ntn_slices;
  const Tensor& eh = cache.tensors.at(0);
  const Tensor& et = cache.tensors.at(1);
  const Tensor& act = cache.tensors.at(2);
  Tensor dh = Tensor::zeros_like(eh), dt = Tensor::zeros_like(et);
  for (const auto& [rel, pos] : group_by_relation(batch)) {
    const Tensor w = block(store.value(kTensor), rel, {n, n, s});
    const Tensor v = block(store.value(kLinear), rel, {2 * n, s});
    const Tensor u = block(store.value(kOut), rel, {s, 1});
    const Tensor h = take_rows(eh, pos), t = take_rows(et, pos);
    const Tensor a = take_rows(act, pos);

    Tensor g({pos.size(), 1});
    for (std::size_t i = 0; i < pos.size(); ++i) g[i] = d_raw[pos[i]];
    Tensor da = Tensor::zeros_like(a), du({s, 1});
    ops::affine_backward(a, u, g, &da, du, nullptr);
    const Tensor dpre = ops::tanh_backward(a, da);

    Tensor gh = Tensor::zeros_like(h), gt = Tensor::zeros_like(t);
    Tensor dw({n, n, s}), dv({2 * n, s}), db({s});
    ops::bilinear_slices_backward(h, w, t, dpre, &gh, &dw, &gt);
    const Tensor x = ops::concat({&h, &t});
    Tensor dx = Tensor::zeros_like(x);
    ops::affine_backward(x, v, dpre, &dx, dv, &db);
    const std::size_t widths[] = {n, n};
    auto parts = ops::split_columns(dx, widths);
    for (std::size_t i = 0; i < gh.size(); ++i) {
      gh[i] += parts[0][i];
      gt[i] += parts[1][i];
    }
    put_rows(dh, pos, gh);
    put_rows(dt, pos, gt);
    add_block(store.grad(kTensor), rel, dw);
    add_block(store.grad(kLinear), rel, dv);
    add_block(store.grad(kBias), rel, db);
    add_block(store.grad(kOut), rel, du);
  }
  const auto ids = split_ids(batch);
  ops::scatter_add(store.grad(kEntityEmb), ids.heads, dh);
  ops::scatter_add(store.grad(kEntityEmb), ids.tails, dt);
}

void Ntn::project(ParamStore& store, const ProjectionNorms& norms) const {
  const std::size_t n = spec().dim, s = spec().ntn_slices;
  ops::project_rows(store.value(kEntityEmb), norms.vector);
  ops::project_blocks(store.value(kTensor), n * n * s, norms.matrix);
}

}  // namespace mtkgnn::detail
