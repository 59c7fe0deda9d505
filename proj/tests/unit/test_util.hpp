// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mtkgnn/data/dataset.hpp"
#include "mtkgnn/rng.hpp"

namespace mtkgnn::testing {

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_file(const std::filesystem::path& path, const std::string& text);
std::string read_file(const std::filesystem::path& path);

// Small random triplet batch over the given graph size.
std::vector<RelTriplet> random_batch(std::size_t n, const GraphSizes& sizes, Rng& rng);

// Hand-built dataset: `entities` entities named e0.., `relations` relations,
// every split holding the same positive triplets with one corruption each,
// and `attributes` attributes where entity i has value (i mod 10) / 10 for
// every attribute.
Dataset toy_dataset(std::size_t entities, std::size_t relations, std::size_t attributes,
                    std::size_t triplets, std::uint64_t seed);

}  // namespace mtkgnn::testing

namespace mtkgnn::testing {

// Brute-force metric oracles, written independently of the evaluation
// module: no sorting tricks, no rank statistics.
double oracle_accuracy(const std::vector<double>& scores, const std::vector<int>& labels,
                       double threshold);
// Scans -inf, every midpoint of distinct score pairs that are adjacent in
// value, and +inf; first maximum in ascending threshold order.
std::pair<double, double> oracle_threshold(const std::vector<double>& scores,
                                           const std::vector<int>& labels);
// Average over all positive-negative pairs, ties counting one half.
double oracle_auc(const std::vector<double>& scores, const std::vector<int>& labels);
struct OracleRegression {
  double rmse, mae, r2;
};
OracleRegression oracle_regression(const std::vector<double>& y, const std::vector<double>& y_hat);

}  // namespace mtkgnn::testing
