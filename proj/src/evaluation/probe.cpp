// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/evaluation/probe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mtkgnn/errors.hpp"
#include "mtkgnn/rng.hpp"

namespace mtkgnn {

void ProbeConfig::validate() const {
  if (lrs.empty()) throw UsageError("probe learning-rate grid is empty");
  for (double lr : lrs) {
    if (!(lr > 0.0)) throw UsageError("probe learning rates must be positive");
  }
  if (epochs == 0) throw UsageError("probe needs at least one epoch");
}

void to_json(nlohmann::json& j, const ProbeConfig& c) {
  j = nlohmann::json{{"lrs", c.lrs}, {"epochs", c.epochs}, {"clip", c.clip}};
}

void from_json(const nlohmann::json& j, ProbeConfig& c) {
  ProbeConfig d;
  c.lrs = j.value("lrs", d.lrs);
  c.epochs = j.value("epochs", d.epochs);
  c.clip = j.value("clip", d.clip);
}

namespace {

struct Linear {
  std::vector<double> w;
  double b = 0.0;

  double predict(std::span<const double> x) const {
    double s = b;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * x[i];
    return s;
  }
};

std::vector<std::vector<std::size_t>> by_attribute(const std::vector<AttrTriplet>& rows,
                                                   std::size_t n_attributes) {
  std::vector<std::vector<std::size_t>> out(n_attributes);
  for (std::size_t i = 0; i < rows.size(); ++i) out.at(rows[i].attr).push_back(i);
  return out;
}

Linear fit(const Tensor& emb, const std::vector<AttrTriplet>& rows,
           const std::vector<std::size_t>& idx, double lr, std::size_t epochs, Rng rng) {
  Linear m;
  m.w.assign(emb.row_size(), 0.0);
  std::vector<std::size_t> order = idx;
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    Rng shuffle = rng.fork(epoch);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[shuffle.uniform_index(i)]);
    }
    for (std::size_t k : order) {
      const auto x = emb.row(rows[k].entity);
      const double err = m.predict(x) - rows[k].value;
      for (std::size_t i = 0; i < m.w.size(); ++i) m.w[i] -= lr * err * x[i];
      m.b -= lr * err;
    }
  }
  return m;
}

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

double rmse(const Linear& m, const Tensor& emb, const std::vector<AttrTriplet>& rows,
            const std::vector<std::size_t>& idx, bool clip) {
  double sq = 0.0;
  for (std::size_t k : idx) {
    double p = m.predict(emb.row(rows[k].entity));
    if (clip) p = clip01(p);
    const double d = p - rows[k].value;
    sq += d * d;
  }
  const double r = std::sqrt(sq / static_cast<double>(idx.size()));
  // A diverged fit must never win selection.
  return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
}

void finish(AttributeScores& s) {
  if (s.targets.empty()) {
    s.warnings.push_back("no test attribute triplets to score");
    return;
  }
  s.metrics = regression_metrics(s.targets, s.predictions);
  if (!s.metrics.r2) s.warnings.push_back("test targets are constant; r2 undefined");
}

}  // namespace

ProbeResult probe_linear_regression(const Tensor& embeddings, const Dataset& data,
                                    const ProbeConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (embeddings.rank() != 2 || embeddings.row_size() == 0) {
    throw DataError("probe needs a 2-d embedding table with at least one column, got " +
                    shape_string(embeddings.shape()));
  }
  if (embeddings.rows() < data.entities.size()) {
    throw DataError("embedding table has " + std::to_string(embeddings.rows()) +
                    " rows for " + std::to_string(data.entities.size()) + " entities");
  }
  const auto n_attr = data.attributes.size();
  const auto& train = data.splits.attr_train;
  const auto& dev = data.splits.attr_dev;
  const auto& test = data.splits.attr_test;
  const auto train_idx = by_attribute(train, n_attr);
  const auto dev_idx = by_attribute(dev, n_attr);
  const auto test_idx = by_attribute(test, n_attr);

  std::vector<Linear> models(n_attr);
  std::vector<bool> fitted(n_attr, false);
  ProbeResult out;
  const Rng base = Rng(seed).fork("probe");
  for (AttributeId a = 0; a < n_attr; ++a) {
    if (train_idx[a].empty()) {
      out.warnings.push_back("attribute '" + data.attributes.name(a) +
                             "' has no training triplets; skipped");
      continue;
    }
    const bool use_dev = !dev_idx[a].empty();
    const auto& sel_rows = use_dev ? dev : train;
    const auto& sel_idx = use_dev ? dev_idx[a] : train_idx[a];
    double best = std::numeric_limits<double>::infinity();
    for (double lr : cfg.lrs) {
      auto m = fit(embeddings, train, train_idx[a], lr, cfg.epochs, base.fork(a));
      const double r = rmse(m, embeddings, sel_rows, sel_idx, cfg.clip);
      if (r < best || !fitted[a]) {
        best = r;
        models[a] = std::move(m);
        out.chosen_lr[a] = lr;
        fitted[a] = true;
      }
    }
  }

  for (const auto& t : test) {
    if (!fitted[t.attr]) continue;
    double p = models[t.attr].predict(embeddings.row(t.entity));
    if (cfg.clip) p = clip01(p);
    out.targets.push_back(t.value);
    out.predictions.push_back(p);
  }
  finish(out);
  return out;
}

AttributeScores predict_attributes(const MtKgnn& net, const ParamStore& params,
                                   const Dataset& data, Split split) {
  const auto& rows = data.splits.attr(split);
  std::vector<EntityId> entities;
  std::vector<AttributeId> attributes;
  AttributeScores out;
  for (const auto& t : rows) {
    entities.push_back(t.entity);
    attributes.push_back(t.attr);
    out.targets.push_back(t.value);
  }
  out.predictions = net.predict_attribute(params, entities, attributes);
  finish(out);
  return out;
}

std::vector<double> r_guess(std::size_t n, std::uint64_t seed) {
  Rng rng = Rng(seed).fork("r-guess");
  std::vector<double> out(n);
  for (auto& v : out) v = rng.uniform();
  return out;
}

AttributeScores r_guess(const Dataset& data, std::uint64_t seed) {
  AttributeScores out;
  for (const auto& t : data.splits.attr_test) out.targets.push_back(t.value);
  out.predictions = r_guess(out.targets.size(), seed);
  finish(out);
  return out;
}

Tensor r_init_embeddings(std::size_t entities, std::size_t dim, std::uint64_t seed) {
  Rng rng = Rng(seed).fork("r-init");
  Tensor t = Tensor({entities, dim});
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(-0.01, 0.01);
  return t;
}

RegressionMetrics denormalized_metrics(const AttributeScores& scores, const Dataset& data,
                                       Split split) {
  const auto& rows = data.splits.attr(split);
  if (rows.size() != scores.targets.size()) {
    throw std::invalid_argument("scores do not cover the split");
  }
  std::vector<double> y;
  std::vector<double> y_hat;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    y.push_back(rows[i].raw_value);
    y_hat.push_back(data.normalizer.denormalize(rows[i].attr, scores.predictions[i]));
  }
  return regression_metrics(y, y_hat);
}

}  // namespace mtkgnn
