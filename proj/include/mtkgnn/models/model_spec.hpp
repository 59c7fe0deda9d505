// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <json.hpp>

namespace mtkgnn {

enum class ModelKind { cp, rescal, transe, transr, er_mlp, ntn, mt_kgnn };

// Weight init for network layers: `scaled` draws N(0, 1/fan_in), `paper`
// draws N(0, 1). Embeddings are always U(-6/sqrt(dim), 6/sqrt(dim)).
enum class InitScheme { scaled, paper };
enum class EnergyNorm { l2, l1 };
// Which AttrNet side(s) produce direct attribute predictions.
enum class PredictSide { mean, head, tail };

struct ModelSpec {
  ModelKind kind = ModelKind::mt_kgnn;
  // Shared size of entity, relation and attribute embeddings.
  std::size_t dim = 50;
  std::size_t hidden = 100;       // RelNet / ER-MLP hidden layer
  std::size_t attr_hidden = 100;  // each AttrNet side
  std::size_t ntn_slices = 4;
  double margin = 1.0;  // translational kinds only
  double dropout = 0.5;
  InitScheme init = InitScheme::scaled;
  EnergyNorm norm = EnergyNorm::l2;
  PredictSide predict_side = PredictSide::mean;

  // Throws UsageError on zero sizes, a dropout outside [0, 1) or a
  // non-positive margin.
  void validate() const;
};

const char* to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);
bool is_translational(ModelKind kind);

const char* to_string(InitScheme s);
const char* to_string(EnergyNorm n);
const char* to_string(PredictSide s);

void to_json(nlohmann::json& j, const ModelSpec& spec);
void from_json(const nlohmann::json& j, ModelSpec& spec);

}  // namespace mtkgnn
