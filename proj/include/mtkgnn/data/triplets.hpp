// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace mtkgnn {

using EntityId = std::size_t;
using RelationId = std::size_t;
using AttributeId = std::size_t;

struct RelTriplet {
  EntityId head = 0;
  RelationId rel = 0;
  EntityId tail = 0;

  auto operator<=>(const RelTriplet&) const = default;
};

// Attribute fact before normalization.
struct RawAttrTriplet {
  EntityId entity = 0;
  AttributeId attr = 0;
  double raw_value = 0.0;

  bool operator==(const RawAttrTriplet&) const = default;
};

struct AttrTriplet {
  EntityId entity = 0;
  AttributeId attr = 0;
  double value = 0.0;  // normalized to [0, 1]
  double raw_value = 0.0;

  bool operator==(const AttrTriplet&) const = default;
};

struct LabeledRelTriplet {
  RelTriplet triplet;
  int label = 0;  // 1 for facts, 0 for corrupted triplets
};

struct RelTripletHash {
  std::size_t operator()(const RelTriplet& t) const noexcept {
    std::size_t h = std::hash<std::size_t>{}(t.head);
    h = h * 1000003u ^ std::hash<std::size_t>{}(t.rel);
    h = h * 1000003u ^ std::hash<std::size_t>{}(t.tail);
    return h;
  }
};

}  // namespace mtkgnn
