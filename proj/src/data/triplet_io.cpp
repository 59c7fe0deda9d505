// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/data/triplet_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mtkgnn/errors.hpp"

namespace mtkgnn {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

[[noreturn]] void row_error(const std::filesystem::path& path, std::size_t line,
                            const std::string& cause) {
  throw DataError(path.string() + ":" + std::to_string(line) + ": " + cause);
}

}  // namespace

std::vector<TsvRow> read_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<TsvRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 3) {
      row_error(path, lineno,
                "expected 3 tab-separated fields, found " +
                    std::to_string(fields.size()));
    }
    TsvRow row;
    row.line = lineno;
    for (std::size_t i = 0; i < 3; ++i) {
      if (fields[i].empty()) row_error(path, lineno, "empty field");
      row.fields[i] = std::move(fields[i]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double parse_value(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw DataError("'" + text + "' is not a decimal literal");
  }
  if (!std::isfinite(value)) {
    throw DataError("non-finite attribute value '" + text + "'");
  }
  return value;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

RawGraph load_triplets(const std::filesystem::path& rel_path,
                       const std::filesystem::path& attr_path) {
  // Parse both files before interning so a bad attribute file fails fast.
  const auto rel_rows = read_tsv(rel_path);
  const auto attr_rows = read_tsv(attr_path);
  RawGraph g;
  for (const auto& row : rel_rows) {
    const auto& f = row.fields;
    RelTriplet t;
    t.head = g.entities.intern(f[0]);
    t.rel = g.relations.intern(f[1]);
    t.tail = g.entities.intern(f[2]);
    g.rel.push_back(t);
  }
  for (const auto& row : attr_rows) {
    const auto& f = row.fields;
    double value = 0.0;
    try {
      value = parse_value(f[2]);
    } catch (const DataError& e) {
      row_error(attr_path, row.line, e.what());
    }
    RawAttrTriplet t;
    t.entity = g.entities.intern(f[0]);
    t.attr = g.attributes.intern(f[1]);
    t.raw_value = value;
    g.attr.push_back(t);
  }
  return g;
}

void write_triplets(const RawGraph& graph, const std::filesystem::path& rel_path,
                    const std::filesystem::path& attr_path) {
  std::ofstream rel(rel_path, std::ios::binary);
  if (!rel) throw DataError("cannot write " + rel_path.string());
  for (const auto& t : graph.rel) {
    rel << graph.entities.name(t.head) << '\t' << graph.relations.name(t.rel) << '\t'
        << graph.entities.name(t.tail) << '\n';
  }
  std::ofstream attr(attr_path, std::ios::binary);
  if (!attr) throw DataError("cannot write " + attr_path.string());
  for (const auto& t : graph.attr) {
    attr << graph.entities.name(t.entity) << '\t' << graph.attributes.name(t.attr) << '\t'
         << format_double(t.raw_value) << '\n';
  }
  if (!rel || !attr) throw DataError("write failed for " + rel_path.string());
}

}  // namespace mtkgnn
