// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtkgnn/models/model_spec.hpp"
#include "mtkgnn/param_store.hpp"

namespace mtkgnn {

// Parameter ids shared by every model that has the corresponding table.
inline const std::string kEntityEmb = "entity";
inline const std::string kRelationEmb = "relation";
inline const std::string kAttributeEmb = "attribute";

// Every initializer draws from a stream forked off `seed` by parameter id, so
// two models that share a parameter id start from identical values no matter
// which other parameters they create.
void add_embedding(ParamStore& store, const std::string& id, std::size_t rows,
                   std::size_t dim, std::uint64_t seed);
void add_weight(ParamStore& store, const std::string& id,
                std::vector<std::size_t> shape, std::size_t fan_in,
                InitScheme scheme, std::uint64_t seed);
void add_zeros(ParamStore& store, const std::string& id,
               std::vector<std::size_t> shape);

}  // namespace mtkgnn
