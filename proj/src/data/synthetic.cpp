// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/data/synthetic.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "mtkgnn/rng.hpp"

namespace mtkgnn {

bool relation_holds(const SyntheticRelation& rel, const LatentEntity& head,
                    const LatentEntity& tail) {
  if (head.type != rel.head_type || tail.type != rel.tail_type) return false;
  switch (rel.rule) {
    case RelationRule::greater: return head.z > tail.z + rel.param;
    case RelationRule::close: return std::abs(head.z - tail.z) < rel.param;
    case RelationRule::sum_above: return head.z + tail.z > rel.param;
  }
  return false;
}

double attribute_value(const SyntheticAttribute& attr, const LatentEntity& entity,
                       double relational_share, double noise, double standard_normal) {
  const double latent =
      relational_share * entity.z + (1.0 - relational_share) * entity.u;
  return attr.offset + attr.slope * (latent + noise * standard_normal);
}

SyntheticGraph gen_synthetic(const SyntheticConfig& config) {
  if (config.n_entities < 2 || config.n_relations < 2 || config.n_attributes < 2) {
    throw std::invalid_argument(
        "synthetic graph needs at least 2 entities, relations and attributes");
  }
  if (config.n_types < 1) throw std::invalid_argument("n_types must be >= 1");
  if (!(config.relational_share >= 0.0 && config.relational_share <= 1.0)) {
    throw std::invalid_argument("relational_share must lie in [0, 1]");
  }

  const Rng root(config.seed);
  SyntheticGraph out;
  RawGraph& g = out.graph;

  Rng latent_rng = root.fork("latents");
  std::vector<std::vector<EntityId>> by_type(config.n_types);
  for (std::size_t e = 0; e < config.n_entities; ++e) {
    LatentEntity le;
    le.z = latent_rng.uniform();
    le.type = static_cast<int>(latent_rng.uniform_index(config.n_types));
    le.u = latent_rng.uniform();
    out.latents.push_back(le);
    by_type[le.type].push_back(e);
    g.entities.intern("e" + std::to_string(e));
  }

  Rng rel_rng = root.fork("relations");
  for (std::size_t r = 0; r < config.n_relations; ++r) {
    SyntheticRelation rel;
    rel.head_type = static_cast<int>(rel_rng.uniform_index(config.n_types));
    rel.tail_type = static_cast<int>(rel_rng.uniform_index(config.n_types));
    switch (r % 3) {
      case 0:
        rel.rule = RelationRule::greater;
        rel.param = rel_rng.uniform(-0.2, 0.2);
        break;
      case 1:
        rel.rule = RelationRule::close;
        rel.param = rel_rng.uniform(0.1, 0.25);
        break;
      default:
        rel.rule = RelationRule::sum_above;
        rel.param = rel_rng.uniform(0.8, 1.2);
        break;
    }
    out.relations.push_back(rel);
    g.relations.intern("r" + std::to_string(r));
  }

  Rng attr_rng = root.fork("attributes");
  for (std::size_t a = 0; a < config.n_attributes; ++a) {
    SyntheticAttribute attr;
    attr.type = static_cast<int>(a % config.n_types);
    const double magnitude = attr_rng.uniform(10.0, 1000.0);
    attr.slope = attr_rng.bernoulli(0.5) ? magnitude : -magnitude;
    attr.offset = attr_rng.uniform(-100.0, 100.0);
    out.attributes.push_back(attr);
    g.attributes.intern("a" + std::to_string(a));
  }

  Rng edge_rng = root.fork("edges");
  const auto candidates = static_cast<std::size_t>(
      std::llround(config.candidates_per_entity * static_cast<double>(config.n_entities)));
  for (std::size_t r = 0; r < config.n_relations; ++r) {
    const auto& rel = out.relations[r];
    const auto& heads = by_type[rel.head_type];
    const auto& tails = by_type[rel.tail_type];
    if (heads.empty() || tails.empty()) continue;
    std::set<std::pair<EntityId, EntityId>> emitted;
    for (std::size_t c = 0; c < candidates; ++c) {
      const EntityId h = heads[edge_rng.uniform_index(heads.size())];
      const EntityId t = tails[edge_rng.uniform_index(tails.size())];
      if (h == t) continue;
      if (!relation_holds(rel, out.latents[h], out.latents[t])) continue;
      if (!emitted.emplace(h, t).second) continue;
      g.rel.push_back({h, r, t});
    }
  }

  Rng value_rng = root.fork("values");
  for (std::size_t e = 0; e < config.n_entities; ++e) {
    for (std::size_t a = 0; a < config.n_attributes; ++a) {
      const auto& attr = out.attributes[a];
      if (attr.type != out.latents[e].type) continue;
      if (!value_rng.bernoulli(config.attribute_density)) continue;
      const double eps = value_rng.normal();
      g.attr.push_back({e, a, attribute_value(attr, out.latents[e], config.relational_share,
                                                  config.noise, eps)});
    }
  }
  return out;
}

}  // namespace mtkgnn
