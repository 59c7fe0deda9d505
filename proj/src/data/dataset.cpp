// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "mtkgnn/data/corrupt.hpp"
#include "mtkgnn/errors.hpp"
#include "mtkgnn/rng.hpp"

namespace mtkgnn {

namespace {

constexpr std::array<Split, 3> kSplits = {Split::train, Split::dev, Split::test};

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  // Fisher-Yates, back to front.
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.uniform_index(i)]);
  }
}

template <typename T>
std::array<std::vector<T>, 3> cut(const std::vector<T>& items,
                                  const SplitRatios& ratios) {
  const std::size_t n = items.size();
  const auto n_train = static_cast<std::size_t>(std::llround(n * ratios.train));
  const auto n_dev = std::min<std::size_t>(
      n - n_train, static_cast<std::size_t>(std::llround(n * ratios.dev)));
  std::array<std::vector<T>, 3> out;
  out[0].assign(items.begin(), items.begin() + n_train);
  out[1].assign(items.begin() + n_train, items.begin() + n_train + n_dev);
  out[2].assign(items.begin() + n_train + n_dev, items.end());
  return out;
}

}  // namespace

const char* to_string(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "?";
}

const std::vector<RelTriplet>& DatasetSplits::rel(Split s) const {
  return s == Split::train ? rel_train : s == Split::dev ? rel_dev : rel_test;
}
const std::vector<AttrTriplet>& DatasetSplits::attr(Split s) const {
  return s == Split::train ? attr_train : s == Split::dev ? attr_dev : attr_test;
}
const std::vector<RelTriplet>& DatasetSplits::neg(Split s) const {
  return s == Split::train ? neg_train : s == Split::dev ? neg_dev : neg_test;
}

std::vector<RelTriplet> Dataset::all_positives() const {
  std::vector<RelTriplet> out = splits.rel_train;
  out.insert(out.end(), splits.rel_dev.begin(), splits.rel_dev.end());
  out.insert(out.end(), splits.rel_test.begin(), splits.rel_test.end());
  return out;
}

RawSplit split_dataset(const RawGraph& raw, const SplitRatios& ratios,
                       std::uint64_t seed) {
  const double total = ratios.train + ratios.dev + ratios.test;
  if (std::abs(total - 1.0) > 1e-9 || ratios.train < 0 || ratios.dev < 0 ||
      ratios.test < 0) {
    throw UsageError("split ratios must be non-negative and sum to 1");
  }
  Rng rng(seed);
  Rng rel_rng = rng.fork("split-rel");
  Rng attr_rng = rng.fork("split-attr");

  std::vector<RelTriplet> rel = raw.rel;
  std::vector<RawAttrTriplet> attr = raw.attr;
  shuffle(rel, rel_rng);
  shuffle(attr, attr_rng);

  RawSplit out;
  out.rel = cut(rel, ratios);
  out.attr = cut(attr, ratios);
  if (out.rel[0].empty() && out.attr[0].empty()) {
    throw DataError("training split is empty");
  }

  std::vector<char> seen_entity(raw.entities.size(), 0);
  std::vector<char> seen_rel(raw.relations.size(), 0);
  std::vector<char> seen_attr(raw.attributes.size(), 0);
  for (const auto& t : out.rel[0]) {
    seen_entity[t.head] = seen_entity[t.tail] = 1;
    seen_rel[t.rel] = 1;
  }
  for (const auto& t : out.attr[0]) {
    seen_entity[t.entity] = 1;
    seen_attr[t.attr] = 1;
  }

  auto filter_rel = [&](std::vector<RelTriplet>& v) {
    const std::size_t before = v.size();
    std::erase_if(v, [&](const RelTriplet& t) {
      return !seen_entity[t.head] || !seen_entity[t.tail] || !seen_rel[t.rel];
    });
    return before - v.size();
  };
  auto filter_attr = [&](std::vector<RawAttrTriplet>& v) {
    const std::size_t before = v.size();
    std::erase_if(v, [&](const RawAttrTriplet& t) {
      return !seen_entity[t.entity] || !seen_attr[t.attr];
    });
    return before - v.size();
  };
  out.dropped.rel_dev = filter_rel(out.rel[1]);
  out.dropped.rel_test = filter_rel(out.rel[2]);
  out.dropped.attr_dev = filter_attr(out.attr[1]);
  out.dropped.attr_test = filter_attr(out.attr[2]);
  return out;
}

PreparedDataset prepare_dataset(const RawGraph& raw, const PrepareOptions& options) {
  RawSplit split = split_dataset(raw, options.ratios, options.seed);
  PreparedDataset result;
  result.dropped = split.dropped;
  Dataset& ds = result.dataset;

  // Re-intern in training first-appearance order so that a manifest written to
  // disk rebuilds exactly the same ids.
  std::vector<std::size_t> ent_map(raw.entities.size()), rel_map(raw.relations.size()),
      attr_map(raw.attributes.size());
  for (const auto& t : split.rel[0]) {
    ent_map[t.head] = ds.entities.intern(raw.entities.name(t.head));
    rel_map[t.rel] = ds.relations.intern(raw.relations.name(t.rel));
    ent_map[t.tail] = ds.entities.intern(raw.entities.name(t.tail));
  }
  for (const auto& t : split.attr[0]) {
    ent_map[t.entity] = ds.entities.intern(raw.entities.name(t.entity));
    attr_map[t.attr] = ds.attributes.intern(raw.attributes.name(t.attr));
  }

  std::array<std::vector<RawAttrTriplet>, 3> attr_mapped;
  for (std::size_t s = 0; s < 3; ++s) {
    auto& rel_out = s == 0 ? ds.splits.rel_train
                  : s == 1 ? ds.splits.rel_dev
                           : ds.splits.rel_test;
    for (const auto& t : split.rel[s]) {
      rel_out.push_back({ent_map[t.head], rel_map[t.rel], ent_map[t.tail]});
    }
    for (const auto& t : split.attr[s]) {
      attr_mapped[s].push_back({ent_map[t.entity], attr_map[t.attr], t.raw_value});
    }
  }

  ds.normalizer = fit_normalizer(attr_mapped[0], ds.attributes.size());
  for (std::size_t s = 0; s < 3; ++s) {
    auto& out = s == 0 ? ds.splits.attr_train
              : s == 1 ? ds.splits.attr_dev
                       : ds.splits.attr_test;
    for (const auto& t : attr_mapped[s]) {
      out.push_back({t.entity, t.attr, ds.normalizer.normalize(t.attr, t.raw_value),
                     t.raw_value});
    }
  }

  const auto positives = ds.all_positives();
  const TripletSet known(positives.begin(), positives.end());
  Rng neg_rng = Rng(options.seed).fork("negatives");
  ds.splits.neg_train = corrupt(ds.splits.rel_train, known, ds.entities.size(),
                                neg_rng.fork(0).next_u64());
  ds.splits.neg_dev = corrupt(ds.splits.rel_dev, known, ds.entities.size(),
                              neg_rng.fork(1).next_u64());
  ds.splits.neg_test = corrupt(ds.splits.rel_test, known, ds.entities.size(),
                               neg_rng.fork(2).next_u64());
  return result;
}

// ---------------------------------------------------------------------------
// Manifest I/O

namespace {

void write_rel(const std::filesystem::path& path, const std::vector<RelTriplet>& v,
               const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& t : v) {
    out << ds.entities.name(t.head) << '\t' << ds.relations.name(t.rel) << '\t'
        << ds.entities.name(t.tail) << '\n';
  }
}

void write_attr(const std::filesystem::path& path, const std::vector<AttrTriplet>& v,
                const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& t : v) {
    out << ds.entities.name(t.entity) << '\t' << ds.attributes.name(t.attr) << '\t'
        << format_double(t.raw_value) << '\n';
  }
}

std::string file_name(const char* prefix, Split s) {
  return std::string(prefix) + "_" + to_string(s) + ".tsv";
}

}  // namespace

void write_manifest(const Dataset& ds, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (Split s : kSplits) {
    write_rel(dir / file_name("rel", s), ds.splits.rel(s), ds);
    write_attr(dir / file_name("attr", s), ds.splits.attr(s), ds);
    write_rel(dir / file_name("neg", s), ds.splits.neg(s), ds);
  }
  nlohmann::ordered_json norm = nlohmann::ordered_json::object();
  for (std::size_t a = 0; a < ds.attributes.size(); ++a) {
    const auto& r = ds.normalizer.range(a);
    norm[ds.attributes.name(a)] = {{"min", r.min}, {"max", r.max}};
  }
  std::ofstream out(dir / "normalizer.json", std::ios::binary);
  if (!out) throw DataError("cannot write normalizer.json in " + dir.string());
  out << norm.dump(2) << '\n';
}

Dataset read_manifest(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw DataError("manifest directory " + dir.string() + " does not exist");
  }
  // Training files define the vocabularies.
  RawGraph train = load_triplets(dir / file_name("rel", Split::train),
                                 dir / file_name("attr", Split::train));
  Dataset ds;
  ds.entities = train.entities;
  ds.relations = train.relations;
  ds.attributes = train.attributes;
  ds.splits.rel_train = train.rel;

  const auto norm_path = dir / "normalizer.json";
  std::ifstream nin(norm_path);
  if (!nin) throw DataError("missing " + norm_path.string());
  nlohmann::json norm;
  try {
    nin >> norm;
    std::vector<AttributeRange> ranges(ds.attributes.size());
    for (std::size_t a = 0; a < ds.attributes.size(); ++a) {
      const auto& name = ds.attributes.name(a);
      if (!norm.contains(name)) {
        throw DataError(norm_path.string() + ": no range for attribute '" + name + "'");
      }
      ranges[a] = {norm[name].at("min").get<double>(), norm[name].at("max").get<double>()};
    }
    ds.normalizer = AttributeNormalizer(std::move(ranges));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(norm_path.string() + ": " + e.what());
  }

  auto lookup = [](const Vocab& vocab, const std::string& name,
                   const std::filesystem::path& path, std::size_t line) {
    if (auto id = vocab.find(name)) return *id;
    throw DataError(path.string() + ":" + std::to_string(line) + ": " +
                    to_string(vocab.kind()) + " '" + name +
                    "' does not occur in the training split");
  };
  auto read_rel = [&](const std::filesystem::path& path) {
    std::vector<RelTriplet> out;
    for (const auto& row : read_tsv(path)) {
      const auto& f = row.fields;
      out.push_back({lookup(ds.entities, f[0], path, row.line),
                     lookup(ds.relations, f[1], path, row.line),
                     lookup(ds.entities, f[2], path, row.line)});
    }
    return out;
  };
  auto read_attr = [&](const std::filesystem::path& path) {
    std::vector<AttrTriplet> out;
    for (const auto& row : read_tsv(path)) {
      const auto& f = row.fields;
      const auto e = lookup(ds.entities, f[0], path, row.line);
      const auto a = lookup(ds.attributes, f[1], path, row.line);
      double raw = 0.0;
      try {
        raw = parse_value(f[2]);
      } catch (const DataError& err) {
        throw DataError(path.string() + ":" + std::to_string(row.line) + ": " + err.what());
      }
      out.push_back({e, a, ds.normalizer.normalize(a, raw), raw});
    }
    return out;
  };

  ds.splits.attr_train = read_attr(dir / file_name("attr", Split::train));
  ds.splits.rel_dev = read_rel(dir / file_name("rel", Split::dev));
  ds.splits.rel_test = read_rel(dir / file_name("rel", Split::test));
  ds.splits.attr_dev = read_attr(dir / file_name("attr", Split::dev));
  ds.splits.attr_test = read_attr(dir / file_name("attr", Split::test));
  ds.splits.neg_train = read_rel(dir / file_name("neg", Split::train));
  ds.splits.neg_dev = read_rel(dir / file_name("neg", Split::dev));
  ds.splits.neg_test = read_rel(dir / file_name("neg", Split::test));
  for (Split s : kSplits) {
    if (ds.splits.neg(s).size() != ds.splits.rel(s).size()) {
      throw DataError(file_name("neg", s) + ": expected " +
                      std::to_string(ds.splits.rel(s).size()) + " negatives, found " +
                      std::to_string(ds.splits.neg(s).size()));
    }
  }
  return ds;
}

}  // namespace mtkgnn
