// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "mtkgnn/models/model_spec.hpp"
#include "mtkgnn/models/triplet_model.hpp"

namespace mtkgnn {

// How an epoch consumes the relational training pool.
enum class EpochMode {
  // Shuffle, then train on the first batch only: one relational batch per
  // epoch, followed by AT and k AST updates.
  single_batch,
  // Shuffle, then train on every consecutive batch; each batch gets its own
  // AT update and k AST updates.
  full_sweep,
};

const char* to_string(EpochMode mode);

struct TrainConfig {
  ModelSpec model;
  std::size_t batch_size = 500;
  std::size_t epochs = 500;
  double lr = 1e-3;
  std::size_t ast_k = 4;
  bool use_relnet = true;  // MT-KGNN: train RelNet on L_rel
  bool use_at = true;      // MT-KGNN: attribute training from each relational batch
  bool use_ast = true;     // MT-KGNN: attribute-specific training
  std::uint64_t seed = 0;
  ProjectionNorms norms;
  EpochMode epoch_mode = EpochMode::single_batch;
  // Redraw training negatives every epoch instead of using the frozen set.
  bool resample_negatives = false;
  // Candidate margins for translational kinds when sweeping.
  std::vector<double> margins = {1.0, 2.0, 4.0};

  // Throws UsageError for a zero batch size, non-positive learning rate or
  // invalid model spec.
  void validate() const;
};

void to_json(nlohmann::json& j, const TrainConfig& c);
void from_json(const nlohmann::json& j, TrainConfig& c);

}  // namespace mtkgnn
