// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/data/normalizer.hpp"

#include <algorithm>
#include <limits>

namespace mtkgnn {

double AttributeNormalizer::normalize(AttributeId attr, double raw) const {
  const AttributeRange& r = range(attr);
  if (r.max <= r.min) return 0.5;
  if (raw <= r.min) return 0.0;
  if (raw >= r.max) return 1.0;
  return std::clamp((raw - r.min) / (r.max - r.min), 0.0, 1.0);
}

double AttributeNormalizer::denormalize(AttributeId attr, double value) const {
  const AttributeRange& r = range(attr);
  if (r.max <= r.min) return r.min;
  return r.min + value * (r.max - r.min);
}

AttributeNormalizer fit_normalizer(std::span<const RawAttrTriplet> train,
                                   std::size_t n_attributes) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<AttributeRange> ranges(n_attributes, AttributeRange{inf, -inf});
  for (const auto& t : train) {
    AttributeRange& r = ranges.at(t.attr);
    r.min = std::min(r.min, t.raw_value);
    r.max = std::max(r.max, t.raw_value);
  }
  for (auto& r : ranges) {
    if (r.min > r.max) r = AttributeRange{0.0, 0.0};
  }
  return AttributeNormalizer(std::move(ranges));
}

}  // namespace mtkgnn
