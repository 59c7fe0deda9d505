// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mtkgnn/data/triplets.hpp"
#include "mtkgnn/data/vocab.hpp"

namespace mtkgnn {

// Triplets parsed from TSV files, with vocabularies in first-appearance
// order (relational file first, then attribute file).
struct RawGraph {
  Vocab entities{VocabKind::entity};
  Vocab relations{VocabKind::relation};
  Vocab attributes{VocabKind::attribute};
  std::vector<RelTriplet> rel;
  std::vector<RawAttrTriplet> attr;
};

struct TsvRow {
  std::array<std::string, 3> fields;
  std::size_t line = 0;
};

// Reads a three-column TSV file. Empty lines are skipped and a trailing CR
// is tolerated; any other malformed row raises DataError naming file and line.
std::vector<TsvRow> read_tsv(const std::filesystem::path& path);

// Relational rows are head<TAB>relation<TAB>tail; attribute rows are
// entity<TAB>attribute<TAB>value.
RawGraph load_triplets(const std::filesystem::path& rel_path,
                       const std::filesystem::path& attr_path);

// Inverse of load_triplets.
void write_triplets(const RawGraph& graph, const std::filesystem::path& rel_path,
                    const std::filesystem::path& attr_path);

// Parses a finite decimal literal (scientific notation allowed).
double parse_value(const std::string& text);

// Shortest representation that parses back to the same double.
std::string format_double(double value);

}  // namespace mtkgnn
