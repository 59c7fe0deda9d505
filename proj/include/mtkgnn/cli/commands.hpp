// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mtkgnn/cli/config.hpp"
#include "mtkgnn/data/dataset.hpp"

namespace mtkgnn {

// The command-line tool. Returns the process exit code: 0 success, 1 usage
// error, 2 data error, 3 numeric failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// One (model, seed) cell of a benchmark: train, then measure. Pseudo-models
// "r-guess" and "r-init" produce attribute metrics only. A failing cell
// carries its message in `error` instead of throwing.
struct CellResult {
  std::string model;
  std::uint64_t seed = 0;
  std::map<std::string, double> metrics;
  std::string error;
};

CellResult run_cell(const Dataset& data, const RunConfig& cfg, const std::string& model,
                    std::uint64_t seed);

// Mean and sample standard deviation per (model, metric) over the cells
// that produced the metric.
struct MetricSummary {
  double mean = 0.0;
  double std = 0.0;
  std::size_t n = 0;
};
std::map<std::string, std::map<std::string, MetricSummary>> summarize(
    const std::vector<CellResult>& cells);

// Per-cell CSV: model,seed,metric columns...,error.
std::string bench_csv(const std::vector<CellResult>& cells);
// Models as rows, metrics as "mean ± std" columns.
std::string bench_table(const std::vector<CellResult>& cells);

// Up to `limit` names within a small edit distance of `name`.
std::vector<std::string> close_matches(const std::string& name,
                                       const std::vector<std::string>& names,
                                       std::size_t limit = 5);

}  // namespace mtkgnn
