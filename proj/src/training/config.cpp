// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/training/config.hpp"

#include "mtkgnn/errors.hpp"

namespace mtkgnn {

const char* to_string(EpochMode mode) {
  return mode == EpochMode::full_sweep ? "full_sweep" : "single_batch";
}

void TrainConfig::validate() const {
  model.validate();
  if (batch_size == 0) throw UsageError("batch size must be >= 1");
  if (!(lr > 0.0)) throw UsageError("learning rate must be positive");
  if (!(norms.vector > 0.0) || !(norms.matrix > 0.0)) {
    throw UsageError("projection norms must be positive");
  }
  for (double m : margins) {
    if (!(m > 0.0)) throw UsageError("sweep margins must be positive");
  }
}

void to_json(nlohmann::json& j, const TrainConfig& c) {
  j = nlohmann::json{{"model", c.model},
                     {"batch_size", c.batch_size},
                     {"epochs", c.epochs},
                     {"lr", c.lr},
                     {"ast_k", c.ast_k},
                     {"use_relnet", c.use_relnet},
                     {"use_at", c.use_at},
                     {"use_ast", c.use_ast},
                     {"seed", c.seed},
                     {"max_vector_norm", c.norms.vector},
                     {"max_matrix_norm", c.norms.matrix},
                     {"epoch_mode", to_string(c.epoch_mode)},
                     {"resample_negatives", c.resample_negatives},
                     {"margins", c.margins}};
}

namespace {

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

void from_json(const nlohmann::json& j, TrainConfig& c) {
  if (!j.is_object()) throw UsageError("training config must be a JSON object");
  static const char* const kKnown[] = {
      "model",     "batch_size",      "epochs",          "lr",
      "ast_k",     "use_relnet",      "use_at",          "use_ast",
      "seed",      "max_vector_norm", "max_matrix_norm", "epoch_mode",
      "resample_negatives", "margins"};
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) throw UsageError("unknown config field '" + key + "'");
  }
  if (j.contains("model")) c.model = j.at("model").get<ModelSpec>();
  read(j, "batch_size", c.batch_size);
  read(j, "epochs", c.epochs);
  read(j, "lr", c.lr);
  read(j, "ast_k", c.ast_k);
  read(j, "use_relnet", c.use_relnet);
  read(j, "use_at", c.use_at);
  read(j, "use_ast", c.use_ast);
  read(j, "seed", c.seed);
  read(j, "max_vector_norm", c.norms.vector);
  read(j, "max_matrix_norm", c.norms.matrix);
  read(j, "resample_negatives", c.resample_negatives);
  read(j, "margins", c.margins);
  if (j.contains("epoch_mode")) {
    std::string mode;
    read(j, "epoch_mode", mode);
    if (mode == "single_batch") {
      c.epoch_mode = EpochMode::single_batch;
    } else if (mode == "full_sweep") {
      c.epoch_mode = EpochMode::full_sweep;
    } else {
      throw UsageError("epoch_mode must be single_batch or full_sweep");
    }
  }
}

}  // namespace mtkgnn
