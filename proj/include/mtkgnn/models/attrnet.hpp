// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtkgnn/data/dataset.hpp"
#include "mtkgnn/models/model_spec.hpp"
#include "mtkgnn/models/triplet_model.hpp"

namespace mtkgnn {

enum class AttrSide { head, tail };

const char* to_string(AttrSide side);

// One side's inputs. mask[i] == 0 marks an entity without attribute
// triplets: its input is the zero vector and its target is ignored.
struct AttrInputs {
  std::vector<EntityId> entities;
  std::vector<AttributeId> attributes;
  std::vector<double> targets;
  std::vector<std::uint8_t> mask;

  std::size_t size() const { return entities.size(); }
  void push(EntityId e, AttributeId a, double target, bool present);
};

// Two independent regression heads sigma(u' tanh(B'[a; e]) + b), one for the
// head entity of a relational triplet and one for the tail entity.
class AttrNet {
 public:
  explicit AttrNet(ModelSpec spec) : spec_(std::move(spec)) {}

  void init_params(ParamStore& store, const GraphSizes& sizes,
                   std::uint64_t seed) const;
  // Side-specific layer parameters (embeddings excluded).
  std::vector<std::string> layer_ids(AttrSide side) const;

  // Predictions in (0, 1).
  std::vector<double> forward(const ParamStore& store, AttrSide side,
                              const AttrInputs& in, Mode mode, Rng* rng,
                              ForwardCache* cache) const;
  // d_pred is d loss / d prediction.
  void backward(ParamStore& store, AttrSide side, const AttrInputs& in,
                const ForwardCache& cache, std::span<const double> d_pred) const;

 private:
  ModelSpec spec_;
};

// L_head + L_tail with each side's MSE over unmasked entries. Fills the
// per-side gradients when the pointers are non-null.
double loss_attrnet(std::span<const double> head_pred, const AttrInputs& head,
                    std::span<const double> tail_pred, const AttrInputs& tail,
                    std::vector<double>* d_head = nullptr,
                    std::vector<double>* d_tail = nullptr);

}  // namespace mtkgnn
