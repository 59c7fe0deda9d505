// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>

#include "mtkgnn/models/init.hpp"
#include "mtkgnn/models/triplet_model.hpp"

namespace mtkgnn::detail {

struct BatchIds {
  std::vector<std::size_t> heads, rels, tails;
};
BatchIds split_ids(std::span<const RelTriplet> batch);

// Batch positions grouped by relation id, in ascending relation order.
std::map<std::size_t, std::vector<std::size_t>> group_by_relation(
    std::span<const RelTriplet> batch);

// Copy of block `index` of a tensor whose leading axis enumerates blocks.
Tensor block(const Tensor& t, std::size_t index, std::vector<std::size_t> shape);
void add_block(Tensor& t, std::size_t index, const Tensor& grad);

// Rows of `src` at `positions`, and the reverse scatter into `dst`.
Tensor take_rows(const Tensor& src, std::span<const std::size_t> positions);
void put_rows(Tensor& dst, std::span<const std::size_t> positions, const Tensor& rows);

// Per-row L2 (or L1) norms and their gradient.
std::vector<double> row_norms(const Tensor& x, EnergyNorm norm);
Tensor row_norms_backward(const Tensor& x, std::span<const double> norms,
                          std::span<const double> d_norm, EnergyNorm norm);

// Score = w' dropout(tanh(W'[e_h; e_t; r])) + b. Used as ER-MLP and as
// MT-KGNN's RelNet; parameter ids are shared so both start identically.
class ErMlp final : public TripletModel {
 public:
  using TripletModel::TripletModel;
  static inline const std::string kHidden = "mlp.W";
  static inline const std::string kOut = "mlp.w";
  static inline const std::string kBias = "mlp.b";

  void init_params(ParamStore&, const GraphSizes&, std::uint64_t) const override;
  std::vector<std::string> param_ids() const override;
  std::size_t param_count(const GraphSizes&) const override;
  std::vector<double> forward(const ParamStore&, std::span<const RelTriplet>, Mode,
                              Rng*, ForwardCache*) const override;
  void backward(ParamStore&, std::span<const RelTriplet>, const ForwardCache&,
                std::span<const double>) const override;
  void project(ParamStore&, const ProjectionNorms&) const override;
};

// CP: sum_d (e_h * r * e_t)_d.
class Cp final : public TripletModel {
 public:
  using TripletModel::TripletModel;
  void init_params(ParamStore&, const GraphSizes&, std::uint64_t) const override;
  std::vector<std::string> param_ids() const override;
  std::size_t param_count(const GraphSizes&) const override;
  std::vector<double> forward(const ParamStore&, std::span<const RelTriplet>, Mode,
                              Rng*, ForwardCache*) const override;
  void backward(ParamStore&, std::span<const RelTriplet>, const ForwardCache&,
                std::span<const double>) const override;
  void project(ParamStore&, const ProjectionNorms&) const override;
};

// RESCAL: e_h' W_r e_t with one n x n matrix per relation.
class Rescal final : public TripletModel {
 public:
  using TripletModel::TripletModel;
  static inline const std::string kCore = "rescal.W";
  void init_params(ParamStore&, const GraphSizes&, std::uint64_t) const override;
  std::vector<std::string> param_ids() const override;
  std::size_t param_count(const GraphSizes&) const override;
  std::vector<double> forward(const ParamStore&, std::span<const RelTriplet>, Mode,
                              Rng*, ForwardCache*) const override;
  void backward(ParamStore&, std::span<const RelTriplet>, const ForwardCache&,
                std::span<const double>) const override;
  void project(ParamStore&, const ProjectionNorms&) const override;
};

// TransE energy ||e_h + r - e_t||.
class TransE final : public TripletModel {
 public:
  using TripletModel::TripletModel;
  void init_params(ParamStore&, const GraphSizes&, std::uint64_t) const override;
  std::vector<std::string> param_ids() const override;
  std::size_t param_count(const GraphSizes&) const override;
  std::vector<double> forward(const ParamStore&, std::span<const RelTriplet>, Mode,
                              Rng*, ForwardCache*) const override;
  void backward(ParamStore&, std::span<const RelTriplet>, const ForwardCache&,
                std::span<const double>) const override;
  void project(ParamStore&, const ProjectionNorms&) const override;
};

// TransR energy ||M_r e_h + r - M_r e_t|| with one projection per relation.
class TransR final : public TripletModel {
 public:
  using TripletModel::TripletModel;
  static inline const std::string kProjection = "transr.M";
  void init_params(ParamStore&, const GraphSizes&, std::uint64_t) const override;
  std::vector<std::string> param_ids() const override;
  std::size_t param_count(const GraphSizes&) const override;
  std::vector<double> forward(const ParamStore&, std::span<const RelTriplet>, Mode,
                              Rng*, ForwardCache*) const override;
  void backward(ParamStore&, std::span<const RelTriplet>, const ForwardCache&,
                std::span<const double>) const override;
  void project(ParamStore&, const ProjectionNorms&) const override;
};

// NTN: u_r' tanh(e_h' W_r^[1:s] e_t + V_r [e_h; e_t] + b_r).
class Ntn final : public TripletModel {
 public:
  using TripletModel::TripletModel;
  static inline const std::string kTensor = "ntn.W";
  static inline const std::string kLinear = "ntn.V";
  static inline const std::string kBias = "ntn.b";
  static inline const std::string kOut = "ntn.u";
  void init_params(ParamStore&, const GraphSizes&, std::uint64_t) const override;
  std::vector<std::string> param_ids() const override;
  std::size_t param_count(const GraphSizes&) const override;
  std::vector<double> forward(const ParamStore&, std::span<const RelTriplet>, Mode,
                              Rng*, ForwardCache*) const override;
  void backward(ParamStore&, std::span<const RelTriplet>, const ForwardCache&,
                std::span<const double>) const override;
  void project(ParamStore&, const ProjectionNorms&) const override;
};

}  // namespace mtkgnn::detail
