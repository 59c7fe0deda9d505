// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "mtkgnn/data/normalizer.hpp"
#include "mtkgnn/data/triplet_io.hpp"
#include "mtkgnn/data/triplets.hpp"
#include "mtkgnn/data/vocab.hpp"

namespace mtkgnn {

enum class Split { train, dev, test };

const char* to_string(Split split);

struct GraphSizes {
  std::size_t entities = 0;
  std::size_t relations = 0;
  std::size_t attributes = 0;
};

struct DatasetSplits {
  std::vector<RelTriplet> rel_train, rel_dev, rel_test;
  std::vector<AttrTriplet> attr_train, attr_dev, attr_test;
  // neg_X[i] is the corruption of rel_X[i].
  std::vector<RelTriplet> neg_train, neg_dev, neg_test;

  const std::vector<RelTriplet>& rel(Split s) const;
  const std::vector<AttrTriplet>& attr(Split s) const;
  const std::vector<RelTriplet>& neg(Split s) const;
};

// A prepared knowledge graph: train-derived vocabularies, the fitted
// normalizer and all nine splits.
struct Dataset {
  Vocab entities{VocabKind::entity};
  Vocab relations{VocabKind::relation};
  Vocab attributes{VocabKind::attribute};
  AttributeNormalizer normalizer;
  DatasetSplits splits;

  GraphSizes sizes() const {
    return {entities.size(), relations.size(), attributes.size()};
  }
  // Positives of every split; the closed world used to filter corruptions.
  std::vector<RelTriplet> all_positives() const;
};

struct SplitRatios {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
};

struct DropCounts {
  std::size_t rel_dev = 0, rel_test = 0, attr_dev = 0, attr_test = 0;
};

// Index-level partition of a raw graph, ids still in the raw vocabularies.
struct RawSplit {
  std::array<std::vector<RelTriplet>, 3> rel;
  std::array<std::vector<RawAttrTriplet>, 3> attr;
  DropCounts dropped;
};

// Seeded shuffle, then ratio cut (train = round(n * r_train), dev =
// round(n * r_dev), test = rest) for relational and attribute triplets
// independently. Dev/test rows mentioning an entity, relation or attribute
// absent from the training rows are dropped and counted.
RawSplit split_dataset(const RawGraph& raw, const SplitRatios& ratios,
                       std::uint64_t seed);

struct PrepareOptions {
  SplitRatios ratios;
  std::uint64_t seed = 0;
};

// split_dataset + vocabulary rebuild in training first-appearance order +
// fit_normalizer + one corruption per positive in every split.
struct PreparedDataset {
  Dataset dataset;
  DropCounts dropped;
};
PreparedDataset prepare_dataset(const RawGraph& raw, const PrepareOptions& options);

// Split manifest: rel_{train,dev,test}.tsv, attr_{...}.tsv, neg_{...}.tsv and
// normalizer.json (attribute name -> {min, max}).
void write_manifest(const Dataset& dataset, const std::filesystem::path& dir);
Dataset read_manifest(const std::filesystem::path& dir);

}  // namespace mtkgnn
