// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "mtkgnn/data/vocab.hpp"
#include "mtkgnn/tensor.hpp"

namespace mtkgnn {

struct ExternalEmbeddings {
  Tensor vectors;  // [vocab size x dim], row i for entity id i
  std::vector<std::size_t> uncovered;
};

// Reads `token v1 ... vd` rows. A row containing a tab is split on tabs, so
// tokens may contain spaces; other rows are split on whitespace. A first
// line of exactly two integers is taken as a "count dim" header. An entity
// whose full name is a token takes that vector; otherwise its name is split
// on whitespace and underscores and the vectors of the covered pieces are
// averaged. Entities with no covered piece get the zero vector and are
// listed in `uncovered`. Throws DataError on rows of differing dimension.
ExternalEmbeddings load_external_embeddings(const std::filesystem::path& path,
                                            const Vocab& vocab);

// Writes `name\tv1\t...\tvn` rows in id order with round-trip precision.
void write_embeddings(const std::filesystem::path& path, const Vocab& vocab,
                      const Tensor& table);

// The k rows most cosine-similar to row `query`, most similar first, the
// query itself excluded; ties go to the smaller id. Zero rows have
// similarity 0. Throws UsageError unless k < rows, DataError for a zero
// query row.
std::vector<std::pair<std::size_t, double>> nearest_rows(const Tensor& table,
                                                         std::size_t query, std::size_t k);

}  // namespace mtkgnn
