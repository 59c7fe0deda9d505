// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "mtkgnn/data/dataset.hpp"
#include "mtkgnn/models/triplet_model.hpp"

namespace mtkgnn {

// Positives of a split followed by their corruptions, labels 1 then 0.
struct LabeledSplit {
  std::vector<RelTriplet> triplets;
  std::vector<int> labels;
};
LabeledSplit labeled_split(const Dataset& data, Split split);

// A triplet is classified as a fact when its plausibility is >= threshold.
double accuracy(std::span<const double> plausibility, std::span<const int> labels,
                double threshold);

struct ThresholdChoice {
  double threshold = 0.0;
  double accuracy = 0.0;
};

// Tries -inf, the midpoint between every pair of adjacent distinct scores,
// and +inf; keeps the most accurate, preferring the smallest threshold on
// ties. Throws DataError unless both classes are present.
ThresholdChoice select_threshold(std::span<const double> plausibility,
                                 std::span<const int> labels);

// Probability that a random positive outscores a random negative, ties
// counting one half. Throws DataError unless both classes are present.
double auc(std::span<const double> plausibility, std::span<const int> labels);

struct ClassificationResult {
  double threshold = 0.0;
  double dev_accuracy = 0.0;
  double test_accuracy = 0.0;
  double test_auc = 0.0;
  std::size_t n_dev = 0;
  std::size_t n_test = 0;
};

nlohmann::json to_json(const ClassificationResult& r);

// Threshold selected on dev (train when dev is empty), then applied to test.
ClassificationResult evaluate_classification(const TripletModel& model,
                                             const ParamStore& params,
                                             const Dataset& data);

}  // namespace mtkgnn
