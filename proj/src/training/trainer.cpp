// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/training/trainer.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "mtkgnn/adam.hpp"
#include "mtkgnn/data/corrupt.hpp"
#include "mtkgnn/errors.hpp"
#include "mtkgnn/evaluation/classification.hpp"
#include "mtkgnn/models/losses.hpp"
#include "mtkgnn/models/mt_kgnn.hpp"

namespace mtkgnn {

nlohmann::json to_json(const EpochLog& log) {
  return {{"epoch", log.epoch},           {"rel_loss", log.rel_loss},
          {"attr_loss", log.attr_loss},   {"rel_updates", log.rel_updates},
          {"attr_updates", log.attr_updates}, {"wall_ms", log.wall_ms}};
}

namespace {

constexpr const char* kRelationalOpt = "relational";
constexpr const char* kAttributeOpt = "attribute";

struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;
};

Rng epoch_rng(const TrainConfig& cfg, std::size_t epoch) {
  return Rng(cfg.seed).fork("epoch").fork(static_cast<std::uint64_t>(epoch));
}

std::vector<std::size_t> permutation(std::size_t n, Rng rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.uniform_index(i)]);
  }
  return order;
}

std::vector<Range> epoch_batches(const TrainConfig& cfg, std::size_t n) {
  if (cfg.epoch_mode == EpochMode::single_batch) {
    return {Range{0, std::min(cfg.batch_size, n)}};
  }
  std::vector<Range> out;
  for (std::size_t b = 0; b < n; b += cfg.batch_size) {
    out.push_back({b, std::min(b + cfg.batch_size, n)});
  }
  return out;
}

// Training negatives for an epoch: the frozen corruptions, or fresh ones.
std::vector<RelTriplet> epoch_negatives(const Dataset& data, const TrainConfig& cfg,
                                        std::size_t epoch, const TripletSet& known) {
  if (!cfg.resample_negatives) return data.splits.neg_train;
  const auto seed = Rng(cfg.seed).fork("resample").fork(epoch).next_u64();
  return corrupt(data.splits.rel_train, known, data.entities.size(), seed);
}

TripletSet known_positives(const Dataset& data, const TrainConfig& cfg) {
  TripletSet known;
  if (!cfg.resample_negatives) return known;
  for (const auto& t : data.all_positives()) known.insert(t);
  return known;
}

std::string where(std::size_t epoch, std::size_t batch) {
  return "epoch " + std::to_string(epoch) + " batch " + std::to_string(batch);
}

double relational_step(const TripletModel& model, ParamStore& store, Adam& adam,
                       const std::vector<std::string>& ids,
                       std::span<const RelTriplet> batch, std::span<const int> labels,
                       Rng rng) {
  ForwardCache cache;
  const auto logits = model.forward(store, batch, Mode::train, &rng, &cache);
  const auto lg = sigmoid_cross_entropy(logits, labels);
  if (!std::isfinite(lg.loss)) throw NumericError("non-finite relational loss");
  model.backward(store, batch, cache, lg.grad);
  adam.step(store, ids);
  return lg.loss;
}

double hinge_step(const TripletModel& model, ParamStore& store, Adam& adam,
                  const std::vector<std::string>& ids, std::span<const RelTriplet> pos,
                  std::span<const RelTriplet> neg, double margin, Rng rng) {
  ForwardCache pos_cache;
  ForwardCache neg_cache;
  Rng pos_rng = rng.fork("pos");
  Rng neg_rng = rng.fork("neg");
  const auto e_pos = model.forward(store, pos, Mode::train, &pos_rng, &pos_cache);
  const auto e_neg = model.forward(store, neg, Mode::train, &neg_rng, &neg_cache);
  const auto h = pairwise_hinge(e_pos, e_neg, margin);
  if (!std::isfinite(h.loss)) throw NumericError("non-finite hinge loss");
  model.backward(store, pos, pos_cache, h.d_pos);
  model.backward(store, neg, neg_cache, h.d_neg);
  adam.step(store, ids);
  return h.loss;
}

bool all_masked(const AttrBatch& b) {
  for (auto m : b.head.mask) if (m) return false;
  for (auto m : b.tail.mask) if (m) return false;
  return true;
}

// One AttrNet update. Batches with no unmasked entry are skipped and
// return false.
bool attribute_step(const MtKgnn& net, ParamStore& store, Adam& adam,
                    const std::vector<std::string>& ids, const AttrBatch& batch,
                    Rng rng, const TrainHooks& hooks, double& loss) {
  if (all_masked(batch)) return false;
  if (hooks.before_attr_update) hooks.before_attr_update(store, batch);
  const auto& attr = net.attrnet();
  ForwardCache head_cache;
  ForwardCache tail_cache;
  Rng head_rng = rng.fork("head");
  Rng tail_rng = rng.fork("tail");
  const auto head_pred =
      attr.forward(store, AttrSide::head, batch.head, Mode::train, &head_rng, &head_cache);
  const auto tail_pred =
      attr.forward(store, AttrSide::tail, batch.tail, Mode::train, &tail_rng, &tail_cache);
  std::vector<double> d_head;
  std::vector<double> d_tail;
  loss = loss_attrnet(head_pred, batch.head, tail_pred, batch.tail, &d_head, &d_tail);
  if (!std::isfinite(loss)) throw NumericError("non-finite attribute loss");
  attr.backward(store, AttrSide::head, batch.head, head_cache, d_head);
  attr.backward(store, AttrSide::tail, batch.tail, tail_cache, d_tail);
  adam.step(store, ids);
  if (hooks.after_attr_update) hooks.after_attr_update(store, batch);
  return true;
}

OptimizerState snapshot(const Adam& adam) { return {adam.steps(), adam.moments()}; }

void restore(Adam& adam, const Checkpoint& ckpt, const char* name) {
  const auto it = ckpt.optimizers.find(name);
  if (it == ckpt.optimizers.end()) return;
  adam.restore(it->second.steps, it->second.moments);
}

// A resumed run must match the checkpoint in everything but its length.
void check_resume(const Checkpoint& ckpt, const TrainConfig& cfg, const Dataset& data) {
  verify_vocab(ckpt, data);
  nlohmann::json a = ckpt.config;
  nlohmann::json b = cfg;
  a.erase("epochs");
  b.erase("epochs");
  if (a != b) {
    throw UsageError("resume config differs from the checkpoint's: " + a.dump() +
                     " vs " + b.dump());
  }
  if (ckpt.epoch > cfg.epochs) {
    throw UsageError("checkpoint has " + std::to_string(ckpt.epoch) +
                     " epochs, more than the requested " + std::to_string(cfg.epochs));
  }
}

void check_data(const Dataset& data) {
  if (data.splits.rel_train.empty()) throw DataError("no relational training triplets");
  if (data.splits.neg_train.size() != data.splits.rel_train.size()) {
    throw DataError("training negatives do not pair with training positives");
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

void finish_epoch(EpochLog& log, double rel_sum, double attr_sum,
                  std::chrono::steady_clock::time_point since) {
  log.rel_loss = log.rel_updates ? rel_sum / static_cast<double>(log.rel_updates) : 0.0;
  log.attr_loss = log.attr_updates ? attr_sum / static_cast<double>(log.attr_updates) : 0.0;
  log.wall_ms = elapsed_ms(since);
}

}  // namespace

TrainResult train_mtkgnn(const Dataset& data, const TrainConfig& cfg,
                         const TrainHooks& hooks, const Checkpoint* resume) {
  cfg.validate();
  if (cfg.model.kind != ModelKind::mt_kgnn) throw UsageError("train_mtkgnn needs kind mt-kgnn");
  check_data(data);
  const bool has_attributes = !data.splits.attr_train.empty();
  if (has_attributes && !cfg.use_at && !cfg.use_ast) {
    throw UsageError("at least one of AT and AST must be enabled");
  }

  const MtKgnn net(cfg.model);
  TrainResult result;
  Checkpoint& ckpt = result.checkpoint;
  Adam rel_adam({cfg.lr});
  Adam attr_adam({cfg.lr});
  if (resume) {
    check_resume(*resume, cfg, data);
    ckpt = *resume;
    restore(rel_adam, ckpt, kRelationalOpt);
    restore(attr_adam, ckpt, kAttributeOpt);
  } else {
    net.init_params(ckpt.params, data.sizes(), cfg.seed);
    ckpt.vocab = VocabHashes::of(data);
  }
  ckpt.config = cfg;

  const auto rel_ids = net.relational_ids();
  const auto attr_ids = net.attribute_ids();
  const AttrIndex index(data.splits.attr_train, data.entities.size(), data.attributes.size());
  const TripletSet known = known_positives(data, cfg);
  const auto& pos = data.splits.rel_train;

  std::vector<RelTriplet> pool;
  std::vector<int> pool_labels;
  std::vector<RelTriplet> batch;
  std::vector<int> labels;
  for (std::size_t epoch = ckpt.epoch; epoch < cfg.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    const Rng er = epoch_rng(cfg, epoch);
    const auto neg = epoch_negatives(data, cfg, epoch, known);
    pool.assign(pos.begin(), pos.end());
    pool.insert(pool.end(), neg.begin(), neg.end());
    pool_labels.assign(pos.size(), 1);
    pool_labels.resize(pool.size(), 0);
    const auto order = permutation(pool.size(), er.fork("shuffle"));

    EpochLog log;
    log.epoch = epoch + 1;
    double rel_sum = 0.0;
    double attr_sum = 0.0;
    const auto ranges = epoch_batches(cfg, pool.size());
    for (std::size_t b = 0; b < ranges.size(); ++b) {
      batch.clear();
      labels.clear();
      for (std::size_t i = ranges[b].begin; i < ranges[b].end; ++i) {
        batch.push_back(pool[order[i]]);
        labels.push_back(pool_labels[order[i]]);
      }
      try {
        if (cfg.use_relnet) {
          rel_sum += relational_step(net.relnet(), ckpt.params, rel_adam, rel_ids, batch,
                                     labels, er.fork("relnet").fork(b));
          ++log.rel_updates;
        }
        double loss = 0.0;
        if (cfg.use_at && has_attributes) {
          Rng rng = er.fork("at").fork(b);
          const auto ab = build_attributes(batch, index, rng);
          if (attribute_step(net, ckpt.params, attr_adam, attr_ids, ab, rng.fork("dropout"),
                             hooks, loss)) {
            attr_sum += loss;
            ++log.attr_updates;
          }
        }
        if (cfg.use_ast && has_attributes) {
          for (std::size_t k = 0; k < cfg.ast_k; ++k) {
            Rng rng = er.fork("ast").fork(b).fork(k);
            const auto attr = static_cast<AttributeId>(rng.uniform_index(data.attributes.size()));
            const auto ab = sample_attribute_batch(index, attr, cfg.batch_size, rng);
            if (attribute_step(net, ckpt.params, attr_adam, attr_ids, ab,
                               rng.fork("dropout"), hooks, loss)) {
              attr_sum += loss;
              ++log.attr_updates;
            }
          }
        }
      } catch (const NumericError& e) {
        throw NumericError(std::string(e.what()) + " at " + where(epoch + 1, b + 1));
      }
    }
    net.project(ckpt.params, cfg.norms);
    ckpt.epoch = epoch + 1;
    finish_epoch(log, rel_sum, attr_sum, start);
    result.log.push_back(log);
    if (hooks.on_epoch) hooks.on_epoch(ckpt.params, log);
  }
  ckpt.optimizers[kRelationalOpt] = snapshot(rel_adam);
  ckpt.optimizers[kAttributeOpt] = snapshot(attr_adam);
  return result;
}

TrainResult train_baseline(const Dataset& data, const TrainConfig& cfg,
                           const TrainHooks& hooks, const Checkpoint* resume) {
  cfg.validate();
  if (cfg.model.kind == ModelKind::mt_kgnn) {
    throw UsageError("train_baseline does not train mt-kgnn");
  }
  check_data(data);

  const auto model = make_triplet_model(cfg.model);
  TrainResult result;
  Checkpoint& ckpt = result.checkpoint;
  Adam adam({cfg.lr});
  if (resume) {
    check_resume(*resume, cfg, data);
    ckpt = *resume;
    restore(adam, ckpt, kRelationalOpt);
  } else {
    model->init_params(ckpt.params, data.sizes(), cfg.seed);
    ckpt.vocab = VocabHashes::of(data);
  }
  ckpt.config = cfg;

  const auto ids = model->param_ids();
  const TripletSet known = known_positives(data, cfg);
  const auto& pos = data.splits.rel_train;
  const bool pairwise = model->translational();

  std::vector<RelTriplet> pool;
  std::vector<int> pool_labels;
  std::vector<RelTriplet> batch;
  std::vector<RelTriplet> batch_neg;
  std::vector<int> labels;
  for (std::size_t epoch = ckpt.epoch; epoch < cfg.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    const Rng er = epoch_rng(cfg, epoch);
    const auto neg = epoch_negatives(data, cfg, epoch, known);
    if (pairwise) {
      pool = pos;
    } else {
      pool.assign(pos.begin(), pos.end());
      pool.insert(pool.end(), neg.begin(), neg.end());
      pool_labels.assign(pos.size(), 1);
      pool_labels.resize(pool.size(), 0);
    }
    const auto order = permutation(pool.size(), er.fork("shuffle"));

    EpochLog log;
    log.epoch = epoch + 1;
    double rel_sum = 0.0;
    const auto ranges = epoch_batches(cfg, pool.size());
    for (std::size_t b = 0; b < ranges.size(); ++b) {
      batch.clear();
      batch_neg.clear();
      labels.clear();
      for (std::size_t i = ranges[b].begin; i < ranges[b].end; ++i) {
        batch.push_back(pool[order[i]]);
        if (pairwise) {
          batch_neg.push_back(neg[order[i]]);
        } else {
          labels.push_back(pool_labels[order[i]]);
        }
      }
      try {
        const Rng rng = er.fork("relnet").fork(b);
        rel_sum += pairwise ? hinge_step(*model, ckpt.params, adam, ids, batch, batch_neg,
                                         cfg.model.margin, rng)
                            : relational_step(*model, ckpt.params, adam, ids, batch, labels,
                                              rng);
        ++log.rel_updates;
      } catch (const NumericError& e) {
        throw NumericError(std::string(e.what()) + " at " + where(epoch + 1, b + 1));
      }
    }
    model->project(ckpt.params, cfg.norms);
    ckpt.epoch = epoch + 1;
    finish_epoch(log, rel_sum, 0.0, start);
    result.log.push_back(log);
    if (hooks.on_epoch) hooks.on_epoch(ckpt.params, log);
  }
  ckpt.optimizers[kRelationalOpt] = snapshot(adam);
  return result;
}

double selected_accuracy(const TripletModel& model, const ParamStore& params,
                         const Dataset& data, Split split) {
  if (data.splits.rel(split).empty()) split = Split::train;
  const auto labeled = labeled_split(data, split);
  const auto scores = model.plausibility(params, labeled.triplets);
  return select_threshold(scores, labeled.labels).accuracy;
}

MarginSweep sweep_margins(const Dataset& data, const TrainConfig& cfg,
                          const TrainHooks& hooks) {
  if (!is_translational(cfg.model.kind)) {
    throw UsageError("margin sweep applies to translational models only");
  }
  if (cfg.margins.empty()) throw UsageError("margin sweep needs at least one margin");
  MarginSweep sweep;
  bool have_best = false;
  double best_acc = 0.0;
  for (double m : cfg.margins) {
    TrainConfig run = cfg;
    run.model.margin = m;
    auto result = train_baseline(data, run, hooks);
    const auto model = make_triplet_model(run.model);
    const double acc = selected_accuracy(*model, result.checkpoint.params, data, Split::dev);
    sweep.dev_accuracy.emplace_back(m, acc);
    const bool better = !have_best || acc > best_acc ||
                        (acc == best_acc && m < sweep.best_margin);
    if (better) {
      have_best = true;
      best_acc = acc;
      sweep.best_margin = m;
      sweep.best = std::move(result);
    }
  }
  return sweep;
}

TrainResult train(const Dataset& data, const TrainConfig& cfg, const TrainHooks& hooks,
                  const Checkpoint* resume) {
  if (cfg.model.kind == ModelKind::mt_kgnn) return train_mtkgnn(data, cfg, hooks, resume);
  return train_baseline(data, cfg, hooks, resume);
}

}  // namespace mtkgnn
