// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mtkgnn/data/triplets.hpp"

namespace mtkgnn {

struct AttributeRange {
  double min = 0.0;
  double max = 0.0;
};

// Per-attribute min-max scaling into [0, 1], fitted on training values.
// Values outside the fitted range clamp to 0 or 1. An attribute whose
// training values are all equal maps every input to 0.5, and 0.5 maps back
// to that value.
class AttributeNormalizer {
 public:
  AttributeNormalizer() = default;
  explicit AttributeNormalizer(std::vector<AttributeRange> ranges)
      : ranges_(std::move(ranges)) {}

  std::size_t size() const { return ranges_.size(); }
  const AttributeRange& range(AttributeId attr) const { return ranges_.at(attr); }
  const std::vector<AttributeRange>& ranges() const { return ranges_; }

  double normalize(AttributeId attr, double raw) const;
  double denormalize(AttributeId attr, double value) const;

  bool operator==(const AttributeNormalizer&) const = default;

 private:
  std::vector<AttributeRange> ranges_;
};

inline bool operator==(const AttributeRange& a, const AttributeRange& b) {
  return a.min == b.min && a.max == b.max;
}

// Fits ranges for attribute ids 0..n_attributes-1. An attribute with no
// training values gets the degenerate range [0, 0].
AttributeNormalizer fit_normalizer(std::span<const RawAttrTriplet> train,
                                   std::size_t n_attributes);

}  // namespace mtkgnn
