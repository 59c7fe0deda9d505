// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "mtkgnn/data/triplet_io.hpp"

namespace mtkgnn {

// Threshold predicates on the latent scalars of head and tail.
enum class RelationRule {
  greater,  // z_head > z_tail + param
  close,    // |z_head - z_tail| < param
  sum_above // z_head + z_tail > param
};

struct SyntheticRelation {
  int head_type = 0;
  int tail_type = 0;
  RelationRule rule = RelationRule::greater;
  double param = 0.0;
};

// raw = offset + slope * (share * z + (1 - share) * u + noise * N(0, 1)),
// observed only on entities of `type`.
struct SyntheticAttribute {
  int type = 0;
  double slope = 1.0;
  double offset = 0.0;
};

// z drives both relations and attributes; u only attributes.
struct LatentEntity {
  double z = 0.0;
  double u = 0.0;
  int type = 0;
};

struct SyntheticConfig {
  std::size_t n_entities = 2000;
  std::size_t n_relations = 8;
  std::size_t n_attributes = 6;
  double noise = 0.05;
  std::uint64_t seed = 0;
  std::size_t n_types = 2;
  // Candidate (head, tail) pairs drawn per relation, as a multiple of the
  // entity count; only candidates satisfying the relation's rule are kept.
  double candidates_per_entity = 1.5;
  // Probability that an entity carries a given attribute of its type.
  double attribute_density = 0.5;
  // Weight of z against u in attribute values. 1 makes attributes a pure
  // function of the relational latent.
  double relational_share = 0.6;
};

struct SyntheticGraph {
  RawGraph graph;
  std::vector<LatentEntity> latents;  // indexed by graph entity id
  std::vector<SyntheticRelation> relations;
  std::vector<SyntheticAttribute> attributes;
};

bool relation_holds(const SyntheticRelation& rel, const LatentEntity& head,
                    const LatentEntity& tail);
double attribute_value(const SyntheticAttribute& attr, const LatentEntity& entity,
                       double relational_share, double noise, double standard_normal);

// Seeded random KG whose relations depend on the same latent scalar that
// drives the attribute values. Entity names are "e<id>", relations "r<id>",
// attributes "a<id>"; vocabularies list every generated item in id order.
SyntheticGraph gen_synthetic(const SyntheticConfig& config);

}  // namespace mtkgnn
