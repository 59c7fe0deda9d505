// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "test_util.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <stdexcept>

#include <unistd.h>

#include "mtkgnn/data/corrupt.hpp"

namespace mtkgnn::testing {

TempDir::TempDir() {
  static int counter = 0;
  const auto base = std::filesystem::temp_directory_path();
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = base / ("mtkgnn-test-" + std::to_string(::getpid()) + "-" +
                             std::to_string(counter++));
    if (std::filesystem::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("could not create a temp directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<RelTriplet> random_batch(std::size_t n, const GraphSizes& sizes, Rng& rng) {
  std::vector<RelTriplet> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({rng.uniform_index(sizes.entities), rng.uniform_index(sizes.relations),
                   rng.uniform_index(sizes.entities)});
  }
  return out;
}

Dataset toy_dataset(std::size_t entities, std::size_t relations, std::size_t attributes,
                    std::size_t triplets, std::uint64_t seed) {
  Dataset d;
  for (std::size_t e = 0; e < entities; ++e) d.entities.intern("e" + std::to_string(e));
  for (std::size_t r = 0; r < relations; ++r) d.relations.intern("r" + std::to_string(r));
  for (std::size_t a = 0; a < attributes; ++a) d.attributes.intern("a" + std::to_string(a));

  Rng rng = Rng(seed).fork("toy");
  std::set<RelTriplet> seen;
  std::vector<RelTriplet> pos;
  while (pos.size() < triplets) {
    RelTriplet t{rng.uniform_index(entities), rng.uniform_index(relations),
                 rng.uniform_index(entities)};
    if (t.head == t.tail || !seen.insert(t).second) continue;
    pos.push_back(t);
  }
  TripletSet known(pos.begin(), pos.end());
  const auto neg = corrupt(pos, known, entities, rng.next_u64());
  d.splits.rel_train = d.splits.rel_dev = d.splits.rel_test = pos;
  d.splits.neg_train = d.splits.neg_dev = d.splits.neg_test = neg;

  std::vector<AttributeRange> ranges(attributes, AttributeRange{0.0, 0.9});
  d.normalizer = AttributeNormalizer(ranges);
  for (std::size_t e = 0; e < entities; ++e) {
    for (std::size_t a = 0; a < attributes; ++a) {
      const double v = static_cast<double>(e % 10) / 10.0;
      d.splits.attr_train.push_back({e, a, v / 0.9, v});
    }
  }
  d.splits.attr_dev = d.splits.attr_train;
  d.splits.attr_test = d.splits.attr_train;
  return d;
}

}  // namespace mtkgnn::testing

namespace mtkgnn::testing {

double oracle_accuracy(const std::vector<double>& scores, const std::vector<int>& labels,
                       double threshold) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const int predicted = scores[i] >= threshold ? 1 : 0;
    if (predicted == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(scores.size());
}

std::pair<double, double> oracle_threshold(const std::vector<double>& scores,
                                           const std::vector<int>& labels) {
  std::vector<double> candidates{-std::numeric_limits<double>::infinity(),
                                 std::numeric_limits<double>::infinity()};
  for (double a : scores) {
    // b is the next larger distinct score after a, if any.
    bool found = false;
    double b = 0.0;
    for (double s : scores) {
      if (s > a && (!found || s < b)) {
        b = s;
        found = true;
      }
    }
    if (found) candidates.push_back(a + (b - a) / 2.0);
  }
  double best_t = 0.0;
  double best_acc = -1.0;
  for (double t : candidates) {
    const double acc = oracle_accuracy(scores, labels, t);
    if (acc > best_acc || (acc == best_acc && t < best_t)) {
      best_acc = acc;
      best_t = t;
    }
  }
  return {best_t, best_acc};
}

double oracle_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) wins += 1.0;
      if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

OracleRegression oracle_regression(const std::vector<double>& y,
                                   const std::vector<double>& y_hat) {
  const double n = static_cast<double>(y.size());
  double mean = 0.0;
  for (double v : y) mean += v / n;
  double sse = 0.0, sae = 0.0, sst = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    sse += (y[i] - y_hat[i]) * (y[i] - y_hat[i]);
    sae += std::fabs(y[i] - y_hat[i]);
    sst += (y[i] - mean) * (y[i] - mean);
  }
  return {std::sqrt(sse / n), sae / n, 1.0 - sse / sst};
}

}  // namespace mtkgnn::testing
