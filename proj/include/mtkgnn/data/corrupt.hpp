// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "mtkgnn/data/triplets.hpp"

namespace mtkgnn {

using TripletSet = std::unordered_set<RelTriplet, RelTripletHash>;

inline constexpr int kCorruptionRetries = 1000;

// One negative per positive: a fair coin picks the head or tail slot, which
// is refilled with a uniformly drawn entity until the result is not in
// `known` (at most kCorruptionRetries draws, then DataError).
std::vector<RelTriplet> corrupt(std::span<const RelTriplet> positives,
                                const TripletSet& known,
                                std::size_t n_entities, std::uint64_t seed);

}  // namespace mtkgnn
