// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mtkgnn/data/dataset.hpp"
#include "mtkgnn/data/triplets.hpp"
#include "mtkgnn/models/model_spec.hpp"
#include "mtkgnn/ops.hpp"
#include "mtkgnn/param_store.hpp"
#include "mtkgnn/rng.hpp"

namespace mtkgnn {

enum class Mode { train, eval };

struct ProjectionNorms {
  double vector = 1.0;  // embedding rows
  double matrix = 3.0;  // Frobenius bound for matrix-valued relation params
};

// Intermediate values a forward pass leaves for its backward pass. Each model
// decides what goes in which slot.
struct ForwardCache {
  std::vector<Tensor> tensors;
  std::vector<ops::DropoutResult> dropouts;
  std::vector<std::vector<std::size_t>> groups;
  std::vector<double> raw;
};

// A relational scoring model over a ParamStore. Models are stateless; all
// state lives in the store and the caller-owned cache, so one instance can
// score concurrently from several threads.
class TripletModel {
 public:
  explicit TripletModel(ModelSpec spec) : spec_(std::move(spec)) {}
  virtual ~TripletModel() = default;

  const ModelSpec& spec() const { return spec_; }
  bool translational() const { return is_translational(spec_.kind); }

  virtual void init_params(ParamStore& store, const GraphSizes& sizes,
                           std::uint64_t seed) const = 0;
  virtual std::vector<std::string> param_ids() const = 0;
  // Closed-form parameter count for the given graph.
  virtual std::size_t param_count(const GraphSizes& sizes) const = 0;

  // Raw outputs: logits for pointwise kinds, energies (>= 0) for
  // translational kinds. `rng` is only consulted in train mode.
  virtual std::vector<double> forward(const ParamStore& store,
                                      std::span<const RelTriplet> batch, Mode mode,
                                      Rng* rng, ForwardCache* cache) const = 0;
  // Accumulates d loss / d params given d loss / d raw output.
  virtual void backward(ParamStore& store, std::span<const RelTriplet> batch,
                        const ForwardCache& cache,
                        std::span<const double> d_raw) const = 0;
  // Applies the norm-ball constraints to this model's parameters.
  virtual void project(ParamStore& store, const ProjectionNorms& norms) const = 0;

  // Eval-mode scores: sigmoid(logit) in (0, 1) for pointwise kinds, energy
  // for translational kinds.
  std::vector<double> score(const ParamStore& store,
                            std::span<const RelTriplet> batch) const;
  // Higher means more plausible: sigmoid(logit) or -energy.
  std::vector<double> plausibility(const ParamStore& store,
                                   std::span<const RelTriplet> batch) const;

 private:
  ModelSpec spec_;
};

// For ModelKind::mt_kgnn this is RelNet, i.e. the ER-MLP scorer.
std::unique_ptr<TripletModel> make_triplet_model(const ModelSpec& spec);

}  // namespace mtkgnn
