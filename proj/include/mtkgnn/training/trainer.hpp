// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "mtkgnn/data/dataset.hpp"
#include "mtkgnn/training/attr_batch.hpp"
#include "mtkgnn/training/checkpoint.hpp"
#include "mtkgnn/training/config.hpp"

namespace mtkgnn {

// Losses are averaged over the updates of the epoch; a loss with no
// updates is reported as 0.
struct EpochLog {
  std::size_t epoch = 0;
  double rel_loss = 0.0;   // summed cross entropy (or hinge) per batch
  double attr_loss = 0.0;  // L_head + L_tail per AttrNet update
  std::size_t rel_updates = 0;
  std::size_t attr_updates = 0;
  double wall_ms = 0.0;
};

nlohmann::json to_json(const EpochLog& log);

// Observation points for tests and tooling. All are optional.
struct TrainHooks {
  // Called around every AttrNet update (AT and AST alike).
  std::function<void(const ParamStore&, const AttrBatch&)> before_attr_update;
  std::function<void(const ParamStore&, const AttrBatch&)> after_attr_update;
  std::function<void(const ParamStore&, const EpochLog&)> on_epoch;
};

struct TrainResult {
  Checkpoint checkpoint;
  std::vector<EpochLog> log;
};

// Multi-task training of RelNet and AttrNet over shared entity embeddings.
// `resume` continues from a checkpoint produced by the same configuration.
TrainResult train_mtkgnn(const Dataset& data, const TrainConfig& cfg,
                         const TrainHooks& hooks = {}, const Checkpoint* resume = nullptr);

// Pointwise kinds minimize sigmoid cross entropy on labeled batches;
// translational kinds minimize the pairwise hinge loss on (positive, paired
// negative) batches with margin cfg.model.margin.
TrainResult train_baseline(const Dataset& data, const TrainConfig& cfg,
                           const TrainHooks& hooks = {}, const Checkpoint* resume = nullptr);

struct MarginSweep {
  TrainResult best;
  double best_margin = 0.0;
  // (margin, dev accuracy) in sweep order.
  std::vector<std::pair<double, double>> dev_accuracy;
};

// Trains one model per candidate margin and keeps the one with the highest
// dev accuracy at its dev-selected threshold; ties go to the smaller margin.
MarginSweep sweep_margins(const Dataset& data, const TrainConfig& cfg,
                          const TrainHooks& hooks = {});

// Accuracy at the threshold that maximizes it, both on `split`. Falls back
// to the training split when `split` is empty.
double selected_accuracy(const TripletModel& model, const ParamStore& params,
                         const Dataset& data, Split split);

// Dispatches on cfg.model.kind.
TrainResult train(const Dataset& data, const TrainConfig& cfg,
                  const TrainHooks& hooks = {}, const Checkpoint* resume = nullptr);

}  // namespace mtkgnn
