// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "mtkgnn/data/dataset.hpp"
#include "mtkgnn/models/attrnet.hpp"
#include "mtkgnn/rng.hpp"

namespace mtkgnn {

// Training attribute triplets indexed by entity and by attribute.
struct AttrIndex {
  std::vector<AttrTriplet> triplets;
  std::vector<std::vector<std::size_t>> by_entity;
  std::vector<std::vector<std::size_t>> by_attribute;

  AttrIndex() = default;
  AttrIndex(std::vector<AttrTriplet> train, std::size_t n_entities,
            std::size_t n_attributes);
};

struct AttrBatch {
  AttrInputs head;
  AttrInputs tail;
};

// For every relational triplet, one uniformly drawn attribute triplet of the
// head entity fills the head slot and one of the tail entity the tail slot.
// Entities without attribute triplets get a masked zero slot.
AttrBatch build_attributes(std::span<const RelTriplet> rel_batch,
                           const AttrIndex& index, Rng& rng);

// Attribute-specific batch: `batch_size` triplets of attribute `attr`, drawn
// without replacement when enough exist and with replacement otherwise. The
// same inputs feed both AttrNet sides. Empty when the attribute has no
// training triplets.
AttrBatch sample_attribute_batch(const AttrIndex& index, AttributeId attr,
                                 std::size_t batch_size, Rng& rng);

}  // namespace mtkgnn
