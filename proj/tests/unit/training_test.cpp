// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <set>

#include "mtkgnn/errors.hpp"
#include "mtkgnn/models/init.hpp"
#include "mtkgnn/models/mt_kgnn.hpp"
#include "mtkgnn/training/attr_batch.hpp"
#include "mtkgnn/training/checkpoint.hpp"
#include "mtkgnn/training/trainer.hpp"
#include "test_util.hpp"

namespace mtkgnn {
namespace {

using testing::TempDir;
using testing::toy_dataset;

TrainConfig small_config(ModelKind kind) {
  TrainConfig c;
  c.model.kind = kind;
  c.model.dim = 6;
  c.model.hidden = 8;
  c.model.attr_hidden = 8;
  c.model.dropout = 0.2;
  c.batch_size = 16;
  c.epochs = 4;
  c.lr = 0.01;
  c.ast_k = 2;
  c.seed = 3;
  return c;
}

bool same_params(const ParamStore& a, const ParamStore& b) {
  if (a.ids() != b.ids()) return false;
  for (const auto& id : a.ids()) {
    if (!(a.value(id) == b.value(id))) return false;
  }
  return true;
}

// ---- attribute batches ----------------------------------------------------

TEST(BuildAttributes, UniformOverEntityAttributes) {
  std::vector<AttrTriplet> train{{0, 0, 0.1, 0}, {0, 1, 0.2, 0}, {1, 0, 0.3, 0}};
  const AttrIndex index(train, 3, 2);
  const std::vector<RelTriplet> batch(20000, RelTriplet{0, 0, 1});
  Rng rng(1);
  const auto ab = build_attributes(batch, index, rng);
  ASSERT_EQ(ab.head.size(), batch.size());
  std::size_t first = 0;
  for (std::size_t i = 0; i < ab.head.size(); ++i) {
    ASSERT_TRUE(ab.head.mask[i]);
    EXPECT_EQ(ab.head.entities[i], 0u);
    if (ab.head.attributes[i] == 0) ++first;
    // The tail entity owns a single attribute triplet.
    EXPECT_EQ(ab.tail.attributes[i], 0u);
    EXPECT_EQ(ab.tail.targets[i], 0.3);
  }
  EXPECT_NEAR(static_cast<double>(first) / static_cast<double>(batch.size()), 0.5, 0.02);
}

TEST(BuildAttributes, EntityWithoutAttributesIsMasked) {
  std::vector<AttrTriplet> train{{0, 0, 0.1, 0}};
  const AttrIndex index(train, 3, 1);
  const std::vector<RelTriplet> batch{{0, 0, 2}, {2, 0, 0}};
  Rng rng(2);
  const auto ab = build_attributes(batch, index, rng);
  EXPECT_TRUE(ab.head.mask[0]);
  EXPECT_FALSE(ab.tail.mask[0]);
  EXPECT_FALSE(ab.head.mask[1]);
  EXPECT_TRUE(ab.tail.mask[1]);
}

TEST(SampleAttributeBatch, WithoutReplacementWhenPoolIsLarge) {
  std::vector<AttrTriplet> train;
  for (std::size_t e = 0; e < 30; ++e) train.push_back({e, 1, 0.5, 0});
  const AttrIndex index(train, 30, 2);
  Rng rng(3);
  const auto ab = sample_attribute_batch(index, 1, 10, rng);
  ASSERT_EQ(ab.head.size(), 10u);
  const std::set<EntityId> distinct(ab.head.entities.begin(), ab.head.entities.end());
  EXPECT_EQ(distinct.size(), 10u);
  EXPECT_EQ(ab.head.entities, ab.tail.entities);
  for (auto a : ab.head.attributes) EXPECT_EQ(a, 1u);
}

TEST(SampleAttributeBatch, WithReplacementWhenPoolIsSmall) {
  std::vector<AttrTriplet> train{{0, 0, 0.5, 0}, {1, 0, 0.5, 0}};
  const AttrIndex index(train, 2, 2);
  Rng rng(4);
  EXPECT_EQ(sample_attribute_batch(index, 0, 7, rng).head.size(), 7u);
  EXPECT_EQ(sample_attribute_batch(index, 1, 7, rng).head.size(), 0u);
}

// ---- MT-KGNN training loop ------------------------------------------------

TEST(TrainMtKgnn, UpdateCountsFollowConfig) {
  const Dataset d = toy_dataset(12, 2, 3, 20, 1);
  TrainConfig c = small_config(ModelKind::mt_kgnn);
  c.ast_k = 3;
  std::size_t updates = 0;
  TrainHooks hooks;
  hooks.after_attr_update = [&](const ParamStore&, const AttrBatch&) { ++updates; };
  const auto r = train_mtkgnn(d, c, hooks);
  // One relational batch per epoch: one AT and ast_k AST updates.
  EXPECT_EQ(updates, c.epochs * (1 + c.ast_k));
  ASSERT_EQ(r.log.size(), c.epochs);
  for (const auto& l : r.log) {
    EXPECT_EQ(l.rel_updates, 1u);
    EXPECT_EQ(l.attr_updates, 1 + c.ast_k);
  }

  c.use_ast = false;
  updates = 0;
  train_mtkgnn(d, c, hooks);
  EXPECT_EQ(updates, c.epochs);

  c.use_ast = true;
  c.use_at = false;
  c.epoch_mode = EpochMode::full_sweep;
  c.batch_size = 8;
  updates = 0;
  train_mtkgnn(d, c, hooks);
  EXPECT_EQ(updates, c.epochs * 5 * c.ast_k);  // 40 pool entries, 5 batches
}

TEST(TrainMtKgnn, AttributeUpdatesMoveSharedEntityRows) {
  const Dataset d = toy_dataset(12, 2, 3, 20, 2);
  TrainConfig c = small_config(ModelKind::mt_kgnn);
  c.epochs = 1;
  Tensor before;
  std::size_t changed_updates = 0;
  TrainHooks hooks;
  hooks.before_attr_update = [&](const ParamStore& p, const AttrBatch&) {
    before = p.value(kEntityEmb);
  };
  hooks.after_attr_update = [&](const ParamStore& p, const AttrBatch& b) {
    const Tensor& after = p.value(kEntityEmb);
    const EntityId e = b.head.entities.front();
    for (std::size_t c2 = 0; c2 < after.row_size(); ++c2) {
      if (after.at(e, c2) != before.at(e, c2)) {
        ++changed_updates;
        return;
      }
    }
  };
  train_mtkgnn(d, c, hooks);
  EXPECT_EQ(changed_updates, 1 + c.ast_k);
}

TEST(TrainMtKgnn, DeterministicGivenSeed) {
  const Dataset d = toy_dataset(12, 2, 3, 20, 3);
  const TrainConfig c = small_config(ModelKind::mt_kgnn);
  const auto a = train_mtkgnn(d, c);
  const auto b = train_mtkgnn(d, c);
  EXPECT_TRUE(same_params(a.checkpoint.params, b.checkpoint.params));
  TrainConfig other = c;
  other.seed = 4;
  EXPECT_FALSE(same_params(a.checkpoint.params, train_mtkgnn(d, other).checkpoint.params));
}

TEST(TrainMtKgnn, ReducesToErMlpWithoutAttributeTraining) {
  const Dataset d = toy_dataset(12, 2, 3, 30, 4);
  for (EpochMode mode : {EpochMode::single_batch, EpochMode::full_sweep}) {
    TrainConfig mt = small_config(ModelKind::mt_kgnn);
    mt.epoch_mode = mode;
    mt.use_at = false;
    mt.ast_k = 0;
    TrainConfig er = mt;
    er.model.kind = ModelKind::er_mlp;
    const auto a = train_mtkgnn(d, mt);
    const auto b = train_baseline(d, er);
    for (const auto& id : b.checkpoint.params.ids()) {
      EXPECT_EQ(a.checkpoint.params.value(id), b.checkpoint.params.value(id)) << id;
    }
  }
}

TEST(TrainMtKgnn, RejectsInvalidConfigs) {
  const Dataset d = toy_dataset(8, 2, 2, 10, 5);
  TrainConfig c = small_config(ModelKind::mt_kgnn);
  c.use_at = false;
  c.use_ast = false;
  EXPECT_THROW(train_mtkgnn(d, c), UsageError);
  EXPECT_THROW(train_mtkgnn(d, small_config(ModelKind::er_mlp)), UsageError);
  EXPECT_THROW(train_baseline(d, small_config(ModelKind::mt_kgnn)), UsageError);
  TrainConfig bad = small_config(ModelKind::er_mlp);
  bad.lr = 0.0;
  EXPECT_THROW(train(d, bad), UsageError);
}

TEST(TrainMtKgnn, ProjectionHoldsAfterEveryEpoch) {
  const Dataset d = toy_dataset(12, 2, 3, 20, 6);
  TrainConfig c = small_config(ModelKind::mt_kgnn);
  c.lr = 0.5;  // large steps push rows out of the ball before projection
  TrainHooks hooks;
  hooks.on_epoch = [&](const ParamStore& p, const EpochLog&) {
    for (const auto& id : {kEntityEmb, kRelationEmb, kAttributeEmb}) {
      const Tensor& t = p.value(id);
      for (std::size_t r = 0; r < t.rows(); ++r) {
        double sq = 0.0;
        for (double v : t.row(r)) sq += v * v;
        EXPECT_LE(std::sqrt(sq), 1.0 + 1e-9) << id << " row " << r;
      }
    }
  };
  train_mtkgnn(d, c, hooks);
}

TEST(TrainMtKgnn, NumericFailureNamesEpochAndBatch) {
  const Dataset d = toy_dataset(8, 2, 2, 10, 7);
  TrainConfig c = small_config(ModelKind::mt_kgnn);
  auto ckpt = train_mtkgnn(d, [&] { auto x = c; x.epochs = 1; return x; }()).checkpoint;
  ckpt.params.value(kEntityEmb).fill(NAN);
  try {
    train_mtkgnn(d, c, {}, &ckpt);
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("at epoch 2 batch 1"), std::string::npos) << e.what();
  }
}

// ---- baselines ------------------------------------------------------------

TEST(TrainBaseline, OverfitsOneBatch) {
  const Dataset d = toy_dataset(10, 2, 0, 8, 8);
  for (ModelKind k : {ModelKind::er_mlp, ModelKind::transe}) {
    TrainConfig c = small_config(k);
    c.model.dropout = 0.0;
    c.epochs = 300;
    const auto r = train(d, c);
    const auto model = make_triplet_model(c.model);
    EXPECT_EQ(selected_accuracy(*model, r.checkpoint.params, d, Split::train), 1.0)
        << to_string(k);
  }
}

TEST(TrainBaseline, LogRecordsOneUpdatePerBatch) {
  const Dataset d = toy_dataset(10, 2, 0, 20, 9);
  TrainConfig c = small_config(ModelKind::rescal);
  c.epoch_mode = EpochMode::full_sweep;
  c.batch_size = 7;
  const auto r = train(d, c);
  ASSERT_EQ(r.log.size(), c.epochs);
  EXPECT_EQ(r.log[0].rel_updates, 6u);  // ceil(40 / 7)
  EXPECT_EQ(r.log[0].attr_updates, 0u);
  c.model.kind = ModelKind::transr;
  EXPECT_EQ(train(d, c).log[0].rel_updates, 3u);  // ceil(20 / 7) positives
}

TEST(MarginSweep, KeepsBestAndBreaksTiesTowardSmallerMargin) {
  const Dataset d = toy_dataset(10, 1, 0, 6, 10);
  TrainConfig c = small_config(ModelKind::transe);
  c.model.dropout = 0.0;
  c.epochs = 300;
  c.margins = {4.0, 2.0, 1.0};
  const auto s = sweep_margins(d, c);
  ASSERT_EQ(s.dev_accuracy.size(), 3u);
  double best = 0.0;
  for (const auto& [m, acc] : s.dev_accuracy) best = std::max(best, acc);
  double expected = 0.0;
  for (const auto& [m, acc] : s.dev_accuracy) {
    if (acc == best) expected = expected == 0.0 ? m : std::min(expected, m);
  }
  EXPECT_EQ(s.best_margin, expected);
  EXPECT_EQ(s.best.checkpoint.config.model.margin, expected);
  EXPECT_THROW(sweep_margins(d, small_config(ModelKind::er_mlp)), UsageError);
}

// ---- checkpoints ----------------------------------------------------------

TEST(Checkpoint, RoundTripAndVocabCheck) {
  const Dataset d = toy_dataset(10, 2, 2, 12, 11);
  const auto r = train_mtkgnn(d, small_config(ModelKind::mt_kgnn));
  TempDir dir;
  save_checkpoint(r.checkpoint, dir / "ck.bin");
  const Checkpoint back = load_checkpoint(dir / "ck.bin", d);
  EXPECT_TRUE(same_params(back.params, r.checkpoint.params));
  EXPECT_EQ(nlohmann::json(back.config), nlohmann::json(r.checkpoint.config));
  EXPECT_EQ(back.epoch, r.checkpoint.epoch);
  EXPECT_EQ(back.vocab, r.checkpoint.vocab);
  ASSERT_EQ(back.optimizers.size(), 2u);
  EXPECT_EQ(back.optimizers.at("attribute").steps,
            r.checkpoint.optimizers.at("attribute").steps);

  Dataset other = toy_dataset(10, 2, 2, 12, 11);
  other.entities = Vocab(VocabKind::entity);
  for (int e = 9; e >= 0; --e) other.entities.intern("e" + std::to_string(e));
  EXPECT_THROW(load_checkpoint(dir / "ck.bin", other), DataError);
}

TEST(Checkpoint, CorruptFilesAreRejected) {
  const Dataset d = toy_dataset(8, 2, 0, 8, 12);
  const auto r = train_baseline(d, small_config(ModelKind::cp));
  TempDir dir;
  save_checkpoint(r.checkpoint, dir / "ck.bin");
  const std::string bytes = testing::read_file(dir / "ck.bin");

  testing::write_file(dir / "trunc.bin", bytes.substr(0, bytes.size() - 5));
  EXPECT_THROW(load_checkpoint(dir / "trunc.bin"), DataError);
  testing::write_file(dir / "short.bin", bytes.substr(0, 6));
  EXPECT_THROW(load_checkpoint(dir / "short.bin"), DataError);

  std::string magic = bytes;
  magic[0] = 'X';
  testing::write_file(dir / "magic.bin", magic);
  EXPECT_THROW(load_checkpoint(dir / "magic.bin"), DataError);

  std::string version = bytes;
  version[8] = 9;
  testing::write_file(dir / "version.bin", version);
  EXPECT_THROW(load_checkpoint(dir / "version.bin"), DataError);

  std::string flipped = bytes;
  flipped[flipped.size() - 3] ^= 0x10;
  testing::write_file(dir / "flip.bin", flipped);
  EXPECT_THROW(load_checkpoint(dir / "flip.bin"), DataError);

  testing::write_file(dir / "extra.bin", bytes + "x");
  EXPECT_THROW(load_checkpoint(dir / "extra.bin"), DataError);
  EXPECT_THROW(load_checkpoint(dir / "missing.bin"), DataError);
}

TEST(Checkpoint, SaveIsByteDeterministic) {
  const Dataset d = toy_dataset(8, 2, 2, 8, 13);
  const auto c = small_config(ModelKind::mt_kgnn);
  TempDir dir;
  save_checkpoint(train(d, c).checkpoint, dir / "a.bin");
  save_checkpoint(train(d, c).checkpoint, dir / "b.bin");
  EXPECT_EQ(testing::read_file(dir / "a.bin"), testing::read_file(dir / "b.bin"));
}

TEST(Checkpoint, ResumeIsBitwiseIdentical) {
  const Dataset d = toy_dataset(12, 2, 3, 20, 14);
  for (ModelKind k : {ModelKind::mt_kgnn, ModelKind::transr}) {
    TrainConfig full = small_config(k);
    full.epochs = 6;
    full.resample_negatives = true;
    TrainConfig half = full;
    half.epochs = 3;
    TempDir dir;
    save_checkpoint(train(d, half).checkpoint, dir / "half.bin");
    const Checkpoint mid = load_checkpoint(dir / "half.bin", d);
    const auto resumed = train(d, full, {}, &mid);
    const auto straight = train(d, full);
    EXPECT_TRUE(same_params(resumed.checkpoint.params, straight.checkpoint.params))
        << to_string(k);
    EXPECT_EQ(resumed.log.size(), 3u);
    EXPECT_EQ(resumed.log.front().epoch, 4u);
  }
}

TEST(Checkpoint, ResumeRejectsChangedConfig) {
  const Dataset d = toy_dataset(8, 2, 2, 8, 15);
  TrainConfig c = small_config(ModelKind::mt_kgnn);
  const auto r = train(d, c);
  TrainConfig changed = c;
  changed.epochs = 8;
  changed.lr = 0.02;
  EXPECT_THROW(train(d, changed, {}, &r.checkpoint), UsageError);
  TrainConfig shorter = c;
  shorter.epochs = 2;
  EXPECT_THROW(train(d, shorter, {}, &r.checkpoint), UsageError);
}

TEST(TrainConfigJson, RoundTripAndUnknownKeys) {
  TrainConfig c = small_config(ModelKind::ntn);
  c.epoch_mode = EpochMode::full_sweep;
  c.margins = {0.5, 3.0};
  const nlohmann::json j = c;
  const auto back = j.get<TrainConfig>();
  EXPECT_EQ(nlohmann::json(back), j);
  nlohmann::json bad = j;
  bad["epoch"] = 3;
  EXPECT_THROW(bad.get<TrainConfig>(), UsageError);
}

}  // namespace
}  // namespace mtkgnn
