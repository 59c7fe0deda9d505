// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/models/mt_kgnn.hpp"

#include "mtkgnn/models/init.hpp"

namespace mtkgnn {

MtKgnn::MtKgnn(ModelSpec spec)
    : spec_(std::move(spec)), relnet_(make_triplet_model(spec_)), attrnet_(spec_) {}

void MtKgnn::init_params(ParamStore& store, const GraphSizes& sizes,
                         std::uint64_t seed) const {
  relnet_->init_params(store, sizes, seed);
  attrnet_.init_params(store, sizes, seed);
}

std::size_t MtKgnn::param_count(const GraphSizes& g) const {
  const std::size_t n = spec_.dim, h = spec_.hidden, ha = spec_.attr_hidden;
  return g.entities * n + g.relations * n + g.attributes * n + 3 * n * h + h + 1 +
         2 * (2 * n * ha + ha + 1);
}

std::vector<std::string> MtKgnn::relational_ids() const { return relnet_->param_ids(); }

std::vector<std::string> MtKgnn::attribute_ids() const {
  std::vector<std::string> ids = {kEntityEmb, kAttributeEmb};
  for (AttrSide side : {AttrSide::head, AttrSide::tail}) {
    for (auto& id : attrnet_.layer_ids(side)) ids.push_back(std::move(id));
  }
  return ids;
}

void MtKgnn::project(ParamStore& store, const ProjectionNorms& norms) const {
  relnet_->project(store, norms);
  ops::project_rows(store.value(kAttributeEmb), norms.vector);
}

std::vector<double> MtKgnn::predict_attribute(const ParamStore& store,
                                              std::span<const EntityId> entities,
                                              std::span<const AttributeId> attributes) const {
  AttrInputs in;
  for (std::size_t i = 0; i < entities.size(); ++i) in.push(entities[i], attributes[i], 0.0, true);
  switch (spec_.predict_side) {
    case PredictSide::head:
      return attrnet_.forward(store, AttrSide::head, in, Mode::eval, nullptr, nullptr);
    case PredictSide::tail:
      return attrnet_.forward(store, AttrSide::tail, in, Mode::eval, nullptr, nullptr);
    case PredictSide::mean: break;
  }
  auto head = attrnet_.forward(store, AttrSide::head, in, Mode::eval, nullptr, nullptr);
  const auto tail = attrnet_.forward(store, AttrSide::tail, in, Mode::eval, nullptr, nullptr);
  for (std::size_t i = 0; i < head.size(); ++i) head[i] = 0.5 * (head[i] + tail[i]);
  return head;
}

}  // namespace mtkgnn
