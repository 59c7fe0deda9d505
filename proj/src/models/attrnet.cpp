// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/models/attrnet.hpp"

#include <stdexcept>

#include "mtkgnn/models/init.hpp"
#include "mtkgnn/models/losses.hpp"

namespace mtkgnn {

namespace {

struct SideIds {
  std::string hidden, out, bias;
};

SideIds side_ids(AttrSide side) {
  if (side == AttrSide::head) return {"attr.head.B", "attr.head.u", "attr.head.b"};
  return {"attr.tail.C", "attr.tail.y", "attr.tail.b"};
}

// Rows of `table` for the unmasked examples; masked rows stay zero.
Tensor gather_masked(const Tensor& table, std::span<const std::size_t> ids,
                     std::span<const std::uint8_t> mask) {
  Tensor out({ids.size(), table.dim(1)});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!mask[i]) continue;
    if (ids[i] >= table.rows()) {
      throw std::out_of_range("AttrNet: id " + std::to_string(ids[i]) + " out of range");
    }
    const auto src = table.row(ids[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

void scatter_masked(Tensor& grad, std::span<const std::size_t> ids,
                    std::span<const std::uint8_t> mask, const Tensor& rows) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!mask[i]) continue;
    auto dst = grad.row(ids[i]);
    const auto src = rows.row(i);
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
  }
}

}  // namespace

const char* to_string(AttrSide side) { return side == AttrSide::head ? "head" : "tail"; }

void AttrInputs::push(EntityId e, AttributeId a, double target, bool present) {
  entities.push_back(present ? e : 0);
  attributes.push_back(present ? a : 0);
  targets.push_back(present ? target : 0.0);
  mask.push_back(present ? 1 : 0);
}

void AttrNet::init_params(ParamStore& store, const GraphSizes& sizes,
                          std::uint64_t seed) const {
  const std::size_t n = spec_.dim, h = spec_.attr_hidden;
  if (!store.contains(kEntityEmb)) add_embedding(store, kEntityEmb, sizes.entities, n, seed);
  add_embedding(store, kAttributeEmb, sizes.attributes, n, seed);
  for (AttrSide side : {AttrSide::head, AttrSide::tail}) {
    const auto ids = side_ids(side);
    add_weight(store, ids.hidden, {2 * n, h}, 2 * n, spec_.init, seed);
    add_weight(store, ids.out, {h, 1}, h, spec_.init, seed);
    add_zeros(store, ids.bias, {1});
  }
}

std::vector<std::string> AttrNet::layer_ids(AttrSide side) const {
  const auto ids = side_ids(side);
  return {ids.hidden, ids.out, ids.bias};
}

std::vector<double> AttrNet::forward(const ParamStore& store, AttrSide side,
                                     const AttrInputs& in, Mode mode, Rng* rng,
                                     ForwardCache* cache) const {
  const auto ids = side_ids(side);
  const Tensor a = gather_masked(store.value(kAttributeEmb), in.attributes, in.mask);
  const Tensor e = gather_masked(store.value(kEntityEmb), in.entities, in.mask);
  Tensor x = ops::concat({&a, &e});
  Tensor hidden = ops::tanh(ops::matmul(x, store.value(ids.hidden)));

  const bool training = mode == Mode::train && spec_.dropout > 0.0;
  if (training && rng == nullptr) throw std::invalid_argument("AttrNet: train mode needs an Rng");
  Rng unused(0);
  ops::DropoutResult dropped = ops::dropout(hidden, spec_.dropout, rng ? *rng : unused, training);
  Tensor preds = ops::sigmoid(ops::affine(dropped.out, store.value(ids.out), store.value(ids.bias)));

  std::vector<double> out(preds.data().begin(), preds.data().end());
  if (cache) {
    cache->tensors = {std::move(x), std::move(hidden), std::move(preds)};
    cache->dropouts = {std::move(dropped)};
  }
  return out;
}

void AttrNet::backward(ParamStore& store, AttrSide side, const AttrInputs& in,
                       const ForwardCache& cache, std::span<const double> d_pred) const {
  const auto ids = side_ids(side);
  const std::size_t b = in.size(), n = spec_.dim;
  const Tensor& x = cache.tensors.at(0);
  const Tensor& hidden = cache.tensors.at(1);
  const Tensor& preds = cache.tensors.at(2);
  const ops::DropoutResult& dropped = cache.dropouts.at(0);

  Tensor d_logits = ops::sigmoid_backward(
      preds, Tensor({b, 1}, std::vector<double>(d_pred.begin(), d_pred.end())));
  Tensor d_dropped({b, spec_.attr_hidden});
  ops::affine_backward(dropped.out, store.value(ids.out), d_logits, &d_dropped,
                       store.grad(ids.out), &store.grad(ids.bias));
  Tensor d_pre = ops::tanh_backward(hidden, ops::dropout_backward(dropped, d_dropped));
  Tensor dx({b, 2 * n});
  ops::affine_backward(x, store.value(ids.hidden), d_pre, &dx, store.grad(ids.hidden), nullptr);
  const std::size_t widths[] = {n, n};
  auto parts = ops::split_columns(dx, widths);
  scatter_masked(store.grad(kAttributeEmb), in.attributes, in.mask, parts[0]);
  scatter_masked(store.grad(kEntityEmb), in.entities, in.mask, parts[1]);
}

double loss_attrnet(std::span<const double> head_pred, const AttrInputs& head,
                    std::span<const double> tail_pred, const AttrInputs& tail,
                    std::vector<double>* d_head, std::vector<double>* d_tail) {
  auto lh = masked_mse(head_pred, head.targets, head.mask);
  auto lt = masked_mse(tail_pred, tail.targets, tail.mask);
  if (d_head) *d_head = std::move(lh.grad);
  if (d_tail) *d_tail = std::move(lt.grad);
  return lh.loss + lt.loss;
}

}  // namespace mtkgnn
