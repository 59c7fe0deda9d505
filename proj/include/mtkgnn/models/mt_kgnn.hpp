// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "mtkgnn/models/attrnet.hpp"
#include "mtkgnn/models/triplet_model.hpp"

namespace mtkgnn {

// RelNet and AttrNet over shared entity embeddings.
class MtKgnn {
 public:
  explicit MtKgnn(ModelSpec spec);

  const ModelSpec& spec() const { return spec_; }
  const TripletModel& relnet() const { return *relnet_; }
  const AttrNet& attrnet() const { return attrnet_; }

  void init_params(ParamStore& store, const GraphSizes& sizes,
                   std::uint64_t seed) const;
  std::size_t param_count(const GraphSizes& sizes) const;

  // Parameters updated by the relational loss and by the attribute loss.
  std::vector<std::string> relational_ids() const;
  std::vector<std::string> attribute_ids() const;

  // Entity, relation and attribute rows onto the unit ball.
  void project(ParamStore& store, const ProjectionNorms& norms) const;

  // Eval-mode normalized prediction for each (entity, attribute) pair,
  // combining sides according to spec().predict_side.
  std::vector<double> predict_attribute(const ParamStore& store,
                                        std::span<const EntityId> entities,
                                        std::span<const AttributeId> attributes) const;

 private:
  ModelSpec spec_;
  std::unique_ptr<TripletModel> relnet_;
  AttrNet attrnet_;
};

}  // namespace mtkgnn
