// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/evaluation/embeddings.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "mtkgnn/data/triplet_io.hpp"
#include "mtkgnn/errors.hpp"

namespace mtkgnn {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  if (line.find('\t') != std::string::npos) {
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    return out;
  }
  std::istringstream in(line);
  std::string field;
  while (in >> field) out.push_back(field);
  return out;
}

bool is_count_header(const std::vector<std::string>& f) {
  if (f.size() != 2) return false;
  for (const auto& s : f) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
      return false;
    }
  }
  return true;
}

std::vector<std::string> name_pieces(const std::string& name) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : name) {
    if (c == '_' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

ExternalEmbeddings load_external_embeddings(const std::filesystem::path& path,
                                            const Vocab& vocab) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embedding file " + path.string());
  std::unordered_map<std::string, std::vector<double>> table;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split_fields(line);
    if (fields.empty() || (fields.size() == 1 && fields[0].empty())) continue;
    if (line_no == 1 && is_count_header(fields)) continue;
    const auto where = path.string() + ":" + std::to_string(line_no);
    if (fields.size() < 2) throw DataError(where + ": row has no vector");
    if (dim == 0) dim = fields.size() - 1;
    if (fields.size() - 1 != dim) {
      throw DataError(where + ": dimension " + std::to_string(fields.size() - 1) +
                      " differs from " + std::to_string(dim));
    }
    std::vector<double> v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      try {
        v[i] = parse_value(fields[i + 1]);
      } catch (const DataError& e) {
        throw DataError(where + ": " + e.what());
      }
    }
    table.insert_or_assign(std::move(fields[0]), std::move(v));
  }
  if (dim == 0) throw DataError("embedding file " + path.string() + " has no vectors");

  ExternalEmbeddings out;
  out.vectors = Tensor({vocab.size(), dim});
  for (std::size_t id = 0; id < vocab.size(); ++id) {
    auto row = out.vectors.row(id);
    if (const auto it = table.find(vocab.name(id)); it != table.end()) {
      std::copy(it->second.begin(), it->second.end(), row.begin());
      continue;
    }
    std::size_t covered = 0;
    for (const auto& piece : name_pieces(vocab.name(id))) {
      const auto it = table.find(piece);
      if (it == table.end()) continue;
      for (std::size_t i = 0; i < dim; ++i) row[i] += it->second[i];
      ++covered;
    }
    if (covered == 0) {
      out.uncovered.push_back(id);
    } else {
      for (auto& v : row) v /= static_cast<double>(covered);
    }
  }
  return out;
}

void write_embeddings(const std::filesystem::path& path, const Vocab& vocab,
                      const Tensor& table) {
  if (table.rank() != 2 || table.rows() != vocab.size()) {
    throw std::invalid_argument("embedding table does not match the vocabulary");
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (std::size_t id = 0; id < vocab.size(); ++id) {
    out << vocab.name(id);
    for (double v : table.row(id)) out << '\t' << format_double(v);
    out << '\n';
  }
  if (!out) throw DataError("cannot write " + path.string());
}

std::vector<std::pair<std::size_t, double>> nearest_rows(const Tensor& table,
                                                         std::size_t query, std::size_t k) {
  const std::size_t n = table.rows();
  if (query >= n) throw UsageError("query id out of range");
  if (k >= n) {
    throw UsageError("k must be smaller than the number of rows (" + std::to_string(n) + ")");
  }
  auto norm = [&](std::size_t r) {
    double s = 0.0;
    for (double v : table.row(r)) s += v * v;
    return std::sqrt(s);
  };
  const double qn = norm(query);
  if (qn == 0.0) throw DataError("query embedding has zero norm");
  const auto q = table.row(query);
  std::vector<std::pair<std::size_t, double>> all;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == query) continue;
    const double rn = norm(r);
    double dot = 0.0;
    const auto x = table.row(r);
    for (std::size_t i = 0; i < x.size(); ++i) dot += q[i] * x[i];
    all.emplace_back(r, rn == 0.0 ? 0.0 : dot / (qn * rn));
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  all.resize(k);
  return all;
}

}  // namespace mtkgnn
