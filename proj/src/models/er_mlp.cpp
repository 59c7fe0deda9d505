// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>

#include "models_internal.hpp"

namespace mtkgnn::detail {

void ErMlp::init_params(ParamStore& store, const GraphSizes& sizes,
                        std::uint64_t seed) const {
  const auto& s = spec();
  add_embedding(store, kEntityEmb, sizes.entities, s.dim, seed);
  add_embedding(store, kRelationEmb, sizes.relations, s.dim, seed);
  add_weight(store, kHidden, {3 * s.dim, s.hidden}, 3 * s.dim, s.init, seed);
  add_weight(store, kOut, {s.hidden, 1}, s.hidden, s.init, seed);
  add_zeros(store, kBias, {1});
}

std::vector<std::string> ErMlp::param_ids() const {
  return {kEntityEmb, kRelationEmb, kHidden, kOut, kBias};
}

std::size_t ErMlp::param_count(const GraphSizes& g) const {
  const auto& s = spec();
  return g.entities * s.dim + g.relations * s.dim + 3 * s.dim * s.hidden + s.hidden + 1;
}

std::vector<double> ErMlp::forward(const ParamStore& store,
                                   std::span<const RelTriplet> batch, Mode mode,
                                   Rng* rng, ForwardCache* cache) const {
  const auto ids = split_ids(batch);
  const Tensor& ent = store.value(kEntityEmb);
  Tensor eh = ops::gather(ent, ids.heads);
  Tensor et = ops::gather(ent, ids.tails);
  Tensor r = ops::gather(store.value(kRelationEmb), ids.rels);
  Tensor x = ops::concat({&eh, &et, &r});
  Tensor hidden = ops::tanh(ops::matmul(x, store.value(kHidden)));

  const bool training = mode == Mode::train && spec().dropout > 0.0;
  if (training && rng == nullptr) throw std::invalid_argument("ER-MLP: train mode needs an Rng");
  Rng unused(0);
  ops::DropoutResult dropped =
      ops::dropout(hidden, spec().dropout, rng ? *rng : unused, training);
  Tensor logits = ops::affine(dropped.out, store.value(kOut), store.value(kBias));

  std::vector<double> out(logits.data().begin(), logits.data().end());
  if (cache) {
    cache->tensors = {std::move(x), std::move(hidden)};
    cache->dropouts = {std::move(dropped)};
  }
  return out;
}

void ErMlp::backward(ParamStore& store, std::span<const RelTriplet> batch,
                     const ForwardCache& cache, std::span<const double> d_raw) const {
  const auto& s = spec();
  const std::size_t b = batch.size();
  const Tensor& x = cache.tensors.at(0);
  const Tensor& hidden = cache.tensors.at(1);
  const ops::DropoutResult& dropped = cache.dropouts.at(0);

  Tensor d_logits({b, 1}, std::vector<double>(d_raw.begin(), d_raw.end()));
  Tensor d_dropped({b, s.hidden});
  ops::affine_backward(dropped.out, store.value(kOut), d_logits, &d_dropped,
                       store.grad(kOut), &store.grad(kBias));
  Tensor d_pre = ops::tanh_backward(hidden, ops::dropout_backward(dropped, d_dropped));
  Tensor dx({b, 3 * s.dim});
  ops::affine_backward(x, store.value(kHidden), d_pre, &dx, store.grad(kHidden), nullptr);

  const std::size_t widths[] = {s.dim, s.dim, s.dim};
  auto parts = ops::split_columns(dx, widths);
  const auto ids = split_ids(batch);
  ops::scatter_add(store.grad(kEntityEmb), ids.heads, parts[0]);
  ops::scatter_add(store.grad(kEntityEmb), ids.tails, parts[1]);
  ops::scatter_add(store.grad(kRelationEmb), ids.rels, parts[2]);
}

void ErMlp::project(ParamStore& store, const ProjectionNorms& norms) const {
  ops::project_rows(store.value(kEntityEmb), norms.vector);
  ops::project_rows(store.value(kRelationEmb), norms.vector);
}

}  // namespace mtkgnn::detail
