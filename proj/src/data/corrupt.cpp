// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/data/corrupt.hpp"

#include "mtkgnn/errors.hpp"
#include "mtkgnn/rng.hpp"

namespace mtkgnn {

std::vector<RelTriplet> corrupt(std::span<const RelTriplet> positives,
                                const TripletSet& known,
                                std::size_t n_entities, std::uint64_t seed) {
  if (n_entities < 2) {
    throw DataError("corruption needs at least 2 entities");
  }
  Rng rng = Rng(seed).fork("corrupt");
  std::vector<RelTriplet> out;
  out.reserve(positives.size());
  for (const RelTriplet& pos : positives) {
    bool found = false;
    for (int attempt = 0; attempt < kCorruptionRetries; ++attempt) {
      RelTriplet neg = pos;
      const bool replace_head = rng.bernoulli(0.5);
      const EntityId e = rng.uniform_index(n_entities);
      if (replace_head) {
        neg.head = e;
      } else {
        neg.tail = e;
      }
      if (neg != pos && !known.count(neg)) {
        out.push_back(neg);
        found = true;
        break;
      }
    }
    if (!found) {
      throw DataError("could not corrupt triplet (" + std::to_string(pos.head) +
                      ", " + std::to_string(pos.rel) + ", " +
                      std::to_string(pos.tail) + ") within " +
                      std::to_string(kCorruptionRetries) +
                      " draws; graph too dense");
    }
  }
  return out;
}

}  // namespace mtkgnn
