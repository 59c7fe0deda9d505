// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/training/attr_batch.hpp"

#include <numeric>

#include "mtkgnn/errors.hpp"

namespace mtkgnn {

AttrIndex::AttrIndex(std::vector<AttrTriplet> train, std::size_t n_entities,
                     std::size_t n_attributes)
    : triplets(std::move(train)), by_entity(n_entities), by_attribute(n_attributes) {
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const auto& t = triplets[i];
    if (t.entity >= n_entities || t.attr >= n_attributes) {
      throw DataError("attribute triplet id out of range");
    }
    by_entity[t.entity].push_back(i);
    by_attribute[t.attr].push_back(i);
  }
}

namespace {

void push_one(AttrInputs& in, EntityId e, const AttrIndex& index, Rng& rng) {
  if (e >= index.by_entity.size() || index.by_entity[e].empty()) {
    in.push(0, 0, 0.0, false);
    return;
  }
  const auto& owned = index.by_entity[e];
  const auto& t = index.triplets[owned[rng.uniform_index(owned.size())]];
  in.push(t.entity, t.attr, t.value, true);
}

}  // namespace

AttrBatch build_attributes(std::span<const RelTriplet> rel_batch,
                           const AttrIndex& index, Rng& rng) {
  AttrBatch out;
  for (const auto& t : rel_batch) {
    push_one(out.head, t.head, index, rng);
    push_one(out.tail, t.tail, index, rng);
  }
  return out;
}

AttrBatch sample_attribute_batch(const AttrIndex& index, AttributeId attr,
                                 std::size_t batch_size, Rng& rng) {
  AttrBatch out;
  if (attr >= index.by_attribute.size()) return out;
  const auto& pool = index.by_attribute[attr];
  if (pool.empty() || batch_size == 0) return out;
  std::vector<std::size_t> picked;
  if (pool.size() > batch_size) {
    // Partial Fisher-Yates over a copy of the pool.
    std::vector<std::size_t> order = pool;
    for (std::size_t i = 0; i < batch_size; ++i) {
      std::swap(order[i], order[i + rng.uniform_index(order.size() - i)]);
    }
    picked.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(batch_size));
  } else {
    picked.reserve(batch_size);
    for (std::size_t i = 0; i < batch_size; ++i) {
      picked.push_back(pool[rng.uniform_index(pool.size())]);
    }
  }
  for (std::size_t i : picked) {
    const auto& t = index.triplets[i];
    out.head.push(t.entity, t.attr, t.value, true);
  }
  out.tail = out.head;
  return out;
}

}  // namespace mtkgnn
