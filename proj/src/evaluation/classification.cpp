// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/evaluation/classification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mtkgnn/errors.hpp"

namespace mtkgnn {

namespace {

void check_sizes(std::span<const double> s, std::span<const int> l) {
  if (s.size() != l.size()) throw std::invalid_argument("scores and labels differ in length");
}

void require_both_classes(std::span<const int> l, const char* what) {
  bool pos = false;
  bool neg = false;
  for (int v : l) (v != 0 ? pos : neg) = true;
  if (!pos || !neg) throw DataError(std::string(what) + " needs both positive and negative labels");
}

}  // namespace

LabeledSplit labeled_split(const Dataset& data, Split split) {
  LabeledSplit out;
  const auto& pos = data.splits.rel(split);
  const auto& neg = data.splits.neg(split);
  out.triplets.reserve(pos.size() + neg.size());
  out.triplets.insert(out.triplets.end(), pos.begin(), pos.end());
  out.triplets.insert(out.triplets.end(), neg.begin(), neg.end());
  out.labels.assign(pos.size(), 1);
  out.labels.resize(pos.size() + neg.size(), 0);
  return out;
}

double accuracy(std::span<const double> plausibility, std::span<const int> labels,
                double threshold) {
  check_sizes(plausibility, labels);
  if (labels.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int predicted = plausibility[i] >= threshold ? 1 : 0;
    correct += predicted == (labels[i] != 0 ? 1 : 0);
  }
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

ThresholdChoice select_threshold(std::span<const double> plausibility,
                                 std::span<const int> labels) {
  check_sizes(plausibility, labels);
  require_both_classes(labels, "threshold selection");
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return plausibility[a] < plausibility[b]; });

  // Sweep thresholds upwards. Below every score all triplets are predicted
  // positive; passing a group of equal scores flips the group to negative.
  std::size_t n_pos = 0;
  for (int l : labels) n_pos += l != 0;
  std::size_t correct = n_pos;
  ThresholdChoice best{-kInf, static_cast<double>(correct)};
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    const double v = plausibility[order[i]];
    while (j < order.size() && plausibility[order[j]] == v) {
      correct += labels[order[j]] != 0 ? std::size_t{0} : std::size_t{1};
      correct -= labels[order[j]] != 0 ? std::size_t{1} : std::size_t{0};
      ++j;
    }
    const double t = j < order.size() ? v + (plausibility[order[j]] - v) / 2.0 : kInf;
    if (static_cast<double>(correct) > best.accuracy) best = {t, static_cast<double>(correct)};
    i = j;
  }
  best.accuracy /= static_cast<double>(labels.size());
  return best;
}

double auc(std::span<const double> plausibility, std::span<const int> labels) {
  check_sizes(plausibility, labels);
  require_both_classes(labels, "AUC");
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return plausibility[a] < plausibility[b]; });
  // Mann-Whitney U with average ranks for ties.
  double rank_sum = 0.0;
  std::size_t n_pos = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && plausibility[order[j]] == plausibility[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] != 0) {
        rank_sum += avg_rank;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = labels.size() - n_pos;
  const double np = static_cast<double>(n_pos);
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

nlohmann::json to_json(const ClassificationResult& r) {
  return {{"threshold", r.threshold},       {"dev_accuracy", r.dev_accuracy},
          {"test_accuracy", r.test_accuracy}, {"test_auc", r.test_auc},
          {"n_dev", r.n_dev},               {"n_test", r.n_test}};
}

ClassificationResult evaluate_classification(const TripletModel& model,
                                             const ParamStore& params,
                                             const Dataset& data) {
  const Split select_on = data.splits.rel_dev.empty() ? Split::train : Split::dev;
  const auto dev = labeled_split(data, select_on);
  const auto test = labeled_split(data, Split::test);
  const auto dev_scores = model.plausibility(params, dev.triplets);
  const auto test_scores = model.plausibility(params, test.triplets);
  const auto choice = select_threshold(dev_scores, dev.labels);

  ClassificationResult r;
  r.threshold = choice.threshold;
  r.dev_accuracy = choice.accuracy;
  r.test_accuracy = accuracy(test_scores, test.labels, choice.threshold);
  r.test_auc = auc(test_scores, test.labels);
  r.n_dev = dev.labels.size();
  r.n_test = test.labels.size();
  return r;
}

}  // namespace mtkgnn
