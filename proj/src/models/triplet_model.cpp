// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/models/triplet_model.hpp"

#include <cmath>

#include "models_internal.hpp"

namespace mtkgnn {

std::vector<double> TripletModel::score(const ParamStore& store,
                                        std::span<const RelTriplet> batch) const {
  auto raw = forward(store, batch, Mode::eval, nullptr, nullptr);
  if (!translational()) {
    for (double& v : raw) v = ops::sigmoid(v);
  }
  return raw;
}

std::vector<double> TripletModel::plausibility(const ParamStore& store,
                                               std::span<const RelTriplet> batch) const {
  auto s = score(store, batch);
  if (translational()) {
    for (double& v : s) v = -v;
  }
  return s;
}

std::unique_ptr<TripletModel> make_triplet_model(const ModelSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ModelKind::cp: return std::make_unique<detail::Cp>(spec);
    case ModelKind::rescal: return std::make_unique<detail::Rescal>(spec);
    case ModelKind::transe: return std::make_unique<detail::TransE>(spec);
    case ModelKind::transr: return std::make_unique<detail::TransR>(spec);
    case ModelKind::er_mlp:
    case ModelKind::mt_kgnn: return std::make_unique<detail::ErMlp>(spec);
    case ModelKind::ntn: return std::make_unique<detail::Ntn>(spec);
  }
  throw std::invalid_argument("unknown model kind");
}

namespace detail {

BatchIds split_ids(std::span<const RelTriplet> batch) {
  BatchIds ids;
  ids.heads.reserve(batch.size());
  ids.rels.reserve(batch.size());
  ids.tails.reserve(batch.size());
  for (const auto& t : batch) {
    ids.heads.push_back(t.head);
    ids.rels.push_back(t.rel);
    ids.tails.push_back(t.tail);
  }
  return ids;
}

std::map<std::size_t, std::vector<std::size_t>> group_by_relation(
    std::span<const RelTriplet> batch) {
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < batch.size(); ++i) groups[batch[i].rel].push_back(i);
  return groups;
}

Tensor block(const Tensor& t, std::size_t index, std::vector<std::size_t> shape) {
  const std::size_t n = t.row_size();
  if (index >= t.rows()) throw std::out_of_range("block index out of range");
  const auto src = t.row(index);
  Tensor out(std::move(shape), std::vector<double>(src.begin(), src.end()));
  if (out.size() != n) throw std::invalid_argument("block shape mismatch");
  return out;
}

void add_block(Tensor& t, std::size_t index, const Tensor& grad) {
  auto dst = t.row(index);
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += grad[i];
}

Tensor take_rows(const Tensor& src, std::span<const std::size_t> positions) {
  return ops::gather(src, positions);
}

void put_rows(Tensor& dst, std::span<const std::size_t> positions, const Tensor& rows) {
  ops::scatter_add(dst, positions, rows);
}

std::vector<double> row_norms(const Tensor& x, EnergyNorm norm) {
  std::vector<double> out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double acc = 0.0;
    for (double v : x.row(r)) acc += norm == EnergyNorm::l2 ? v * v : std::abs(v);
    out[r] = norm == EnergyNorm::l2 ? std::sqrt(acc) : acc;
  }
  return out;
}

Tensor row_norms_backward(const Tensor& x, std::span<const double> norms,
                          std::span<const double> d_norm, EnergyNorm norm) {
  Tensor dx = Tensor::zeros_like(x);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto xr = x.row(r);
    auto dr = dx.row(r);
    for (std::size_t j = 0; j < xr.size(); ++j) {
      if (norm == EnergyNorm::l2) {
        // Subgradient 0 at the origin.
        dr[j] = norms[r] > 0.0 ? d_norm[r] * xr[j] / norms[r] : 0.0;
      } else {
        dr[j] = d_norm[r] * (xr[j] > 0.0 ? 1.0 : xr[j] < 0.0 ? -1.0 : 0.0);
      }
    }
  }
  return dx;
}

}  // namespace detail
}  // namespace mtkgnn
