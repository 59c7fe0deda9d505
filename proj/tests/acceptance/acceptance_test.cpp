// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one check per acceptance criterion, one PASS/FAIL line
// each. Exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "mtkgnn/cli/commands.hpp"
#include "mtkgnn/data/synthetic.hpp"
#include "mtkgnn/evaluation/classification.hpp"
#include "mtkgnn/evaluation/probe.hpp"
#include "mtkgnn/evaluation/regression.hpp"
#include "mtkgnn/grad_check.hpp"
#include "mtkgnn/models/attrnet.hpp"
#include "mtkgnn/models/init.hpp"
#include "mtkgnn/models/losses.hpp"
#include "mtkgnn/models/mt_kgnn.hpp"
#include "mtkgnn/training/trainer.hpp"
#include "test_util.hpp"

namespace mtkgnn {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

const std::vector<ModelKind> kTrainable{ModelKind::cp,     ModelKind::rescal, ModelKind::transe,
                                        ModelKind::transr, ModelKind::er_mlp, ModelKind::ntn,
                                        ModelKind::mt_kgnn};

// ---- 1. gradients -----------------------------------------------------------

Outcome gradients() {
  const auto t0 = Clock::now();
  const GraphSizes sizes{9, 3, 4};
  double worst = 0.0;
  std::string worst_where;
  std::size_t checks = 0;
  const auto record = [&](const GradCheckResult& r, const std::string& what) {
    ++checks;
    if (r.max_rel_error >= worst) {
      worst = r.max_rel_error;
      worst_where = what + ":" + r.worst_param;
    }
  };
  for (ModelKind kind : kTrainable) {
    ModelSpec spec;
    spec.kind = kind;
    spec.dim = 5;
    spec.hidden = 6;
    spec.ntn_slices = 4;
    spec.dropout = 0.3;
    spec.margin = 10.0;  // keeps every hinge term active, away from the kink
    const auto model = make_triplet_model(spec);
    for (std::uint64_t instance = 0; instance < 3; ++instance) {
      ParamStore store;
      model->init_params(store, sizes, 100 + instance);
      for (auto& [id, p] : store) {
        Rng jitter = Rng(instance).fork(id);
        for (auto& v : p.value.data()) v += jitter.uniform(-0.1, 0.1);
      }
      Rng rng = Rng(instance).fork("batch");
      const auto pos = testing::random_batch(6, sizes, rng);
      const auto neg = testing::random_batch(6, sizes, rng);
      const std::vector<int> labels{1, 0, 1, 1, 0, 0};
      const auto loss = [&](bool with_grad) {
        if (model->translational()) {
          ForwardCache pc, nc;
          Rng pr(1), nr(2);
          const auto ep = model->forward(store, pos, Mode::train, &pr, &pc);
          const auto en = model->forward(store, neg, Mode::train, &nr, &nc);
          const auto h = pairwise_hinge(ep, en, spec.margin);
          if (with_grad) {
            model->backward(store, pos, pc, h.d_pos);
            model->backward(store, neg, nc, h.d_neg);
          }
          return h.loss;
        }
        ForwardCache cache;
        Rng dr(3);
        const auto logits = model->forward(store, pos, Mode::train, &dr, &cache);
        const auto lg = sigmoid_cross_entropy(logits, labels);
        if (with_grad) model->backward(store, pos, cache, lg.grad);
        return lg.loss;
      };
      record(grad_check(store, loss), to_string(kind));
    }
  }
  ModelSpec spec;
  spec.dim = 5;
  spec.attr_hidden = 6;
  spec.dropout = 0.3;
  const AttrNet net(spec);
  for (std::uint64_t instance = 0; instance < 3; ++instance) {
    ParamStore store;
    net.init_params(store, sizes, 200 + instance);
    Rng rng = Rng(instance).fork("attr");
    AttrInputs head, tail;
    for (std::size_t i = 0; i < 6; ++i) {
      head.push(rng.uniform_index(sizes.entities), rng.uniform_index(sizes.attributes),
                rng.uniform(), i % 3 != 1);
      tail.push(rng.uniform_index(sizes.entities), rng.uniform_index(sizes.attributes),
                rng.uniform(), true);
    }
    const auto loss = [&](bool with_grad) {
      ForwardCache hc, tc;
      Rng hr(4), tr(5);
      const auto hp = net.forward(store, AttrSide::head, head, Mode::train, &hr, &hc);
      const auto tp = net.forward(store, AttrSide::tail, tail, Mode::train, &tr, &tc);
      std::vector<double> dh, dt;
      const double l = loss_attrnet(hp, head, tp, tail, &dh, &dt);
      if (with_grad) {
        net.backward(store, AttrSide::head, head, hc, dh);
        net.backward(store, AttrSide::tail, tail, tc, dt);
      }
      return l;
    };
    record(grad_check(store, loss), "attrnet");
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-4 && secs < 60.0,
          std::to_string(checks) + " checks, max rel error " + std::to_string(worst) + " (" +
              worst_where + "), " + fmt(secs, 2) + " s"};
}

// ---- 2. metric oracles ------------------------------------------------------

Outcome metric_oracles() {
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(49);
    std::vector<double> s(n), y(n), h(n);
    std::vector<int> l(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = rng.bernoulli(0.3) ? static_cast<double>(rng.uniform_index(4)) / 3.0 : rng.uniform();
      l[i] = rng.bernoulli(0.5) ? 1 : 0;
      y[i] = rng.uniform();
      h[i] = rng.uniform(-0.2, 1.2);
    }
    l[0] = 1;
    l[1] = 0;
    const double t = rng.uniform();
    const auto chosen = select_threshold(s, l);
    const auto [ot, oacc] = testing::oracle_threshold(s, l);
    const auto m = regression_metrics(y, h);
    const auto o = testing::oracle_regression(y, h);
    const double thr_gap =
        std::isinf(ot) ? (chosen.threshold == ot ? 0.0 : 1.0) : std::abs(chosen.threshold - ot);
    for (double gap : {std::abs(accuracy(s, l, t) - testing::oracle_accuracy(s, l, t)),
                       std::abs(chosen.accuracy - oacc), thr_gap,
                       std::abs(auc(s, l) - testing::oracle_auc(s, l)),
                       std::abs(m.rmse - o.rmse), std::abs(m.mae - o.mae),
                       std::abs(*m.r2 - o.r2)}) {
      worst = std::max(worst, gap);
    }
  }
  return {worst <= 1e-10, "100 instances, max deviation " + std::to_string(worst)};
}

// ---- shared synthetic data --------------------------------------------------

Dataset synthetic(std::size_t entities, std::uint64_t seed) {
  SyntheticConfig sc;
  sc.n_entities = entities;
  sc.n_relations = 8;
  sc.n_attributes = 6;
  sc.noise = 0.05;
  sc.candidates_per_entity = 2.0;
  sc.attribute_density = 0.9;
  sc.relational_share = 0.6;
  sc.seed = seed;
  return prepare_dataset(gen_synthetic(sc).graph, {{}, seed}).dataset;
}

TrainConfig bench_config(ModelKind kind, std::uint64_t seed) {
  TrainConfig c;
  c.model.kind = kind;
  c.model.dim = 20;
  c.model.hidden = 50;
  c.model.attr_hidden = 50;
  c.model.dropout = 0.0;
  c.epochs = 30;
  c.lr = 0.01;
  c.ast_k = 4;
  c.epoch_mode = EpochMode::full_sweep;
  c.seed = seed;
  return c;
}

// ---- 3. constraint invariants -----------------------------------------------

Outcome constraints(const Dataset& data) {
  double max_row = 0.0;
  double max_frob = 0.0;
  const auto check = [&](const ParamStore& p) {
    for (const auto& id : {kEntityEmb, kRelationEmb, kAttributeEmb}) {
      if (!p.contains(id)) continue;
      const Tensor& t = p.value(id);
      for (std::size_t r = 0; r < t.rows(); ++r) {
        double sq = 0.0;
        for (double v : t.row(r)) sq += v * v;
        max_row = std::max(max_row, std::sqrt(sq));
      }
    }
    for (const std::string id : {"rescal.W", "transr.M", "ntn.W"}) {
      if (!p.contains(id)) continue;
      const Tensor& t = p.value(id);
      for (std::size_t r = 0; r < t.rows(); ++r) {
        double sq = 0.0;
        for (double v : t.row(r)) sq += v * v;
        max_frob = std::max(max_frob, std::sqrt(sq));
      }
    }
  };
  TrainConfig c = bench_config(ModelKind::mt_kgnn, 0);
  c.epochs = 50;
  c.epoch_mode = EpochMode::single_batch;
  c.lr = 0.05;
  check(train(data, c).checkpoint.params);
  for (ModelKind k : {ModelKind::rescal, ModelKind::transr, ModelKind::ntn}) {
    c.model.kind = k;
    c.model.dim = 10;
    check(train(data, c).checkpoint.params);
  }
  return {max_row <= 1.0 + 1e-9 && max_frob <= 3.0 + 1e-9,
          "max row norm " + fmt(max_row, 12) + ", max Frobenius norm " + fmt(max_frob, 12)};
}

// ---- 4. reduction -----------------------------------------------------------

Outcome reduction(const Dataset& data) {
  std::size_t compared = 0;
  for (EpochMode mode : {EpochMode::single_batch, EpochMode::full_sweep}) {
    TrainConfig mt = bench_config(ModelKind::mt_kgnn, 7);
    mt.model.dim = 8;
    mt.model.hidden = 10;
    mt.model.dropout = 0.5;
    mt.epochs = mode == EpochMode::full_sweep ? 3 : 40;
    mt.epoch_mode = mode;
    mt.use_at = false;
    mt.ast_k = 0;
    TrainConfig er = mt;
    er.model.kind = ModelKind::er_mlp;
    std::vector<ParamStore> er_traj;
    TrainHooks er_hooks;
    er_hooks.on_epoch = [&](const ParamStore& p, const EpochLog&) { er_traj.push_back(p); };
    train(data, er, er_hooks);
    std::size_t epoch = 0;
    bool same = true;
    TrainHooks mt_hooks;
    mt_hooks.on_epoch = [&](const ParamStore& p, const EpochLog&) {
      const ParamStore& ref = er_traj.at(epoch++);
      for (const auto& id : ref.ids()) {
        if (!(p.value(id) == ref.value(id))) same = false;
        ++compared;
      }
    };
    train(data, mt, mt_hooks);
    if (!same || epoch != er_traj.size()) {
      return {false, std::string("trajectories diverge in ") + to_string(mode)};
    }
  }
  return {true, std::to_string(compared) + " per-epoch tensors bitwise equal"};
}

// ---- 5-7. directional replication -------------------------------------------

struct MtRun {
  double accuracy = 0.0;
  double rmse = 0.0;
  double r2 = 0.0;
  double seconds = 0.0;
};

MtRun run_mtkgnn(const Dataset& data, const TrainConfig& c) {
  const auto t0 = Clock::now();
  const auto r = train(data, c);
  const MtKgnn net(c.model);
  MtRun out;
  if (c.use_relnet) {
    out.accuracy = evaluate_classification(net.relnet(), r.checkpoint.params, data).test_accuracy;
  }
  const auto s = predict_attributes(net, r.checkpoint.params, data, Split::test);
  out.rmse = s.metrics.rmse;
  out.r2 = s.metrics.r2.value_or(0.0);
  out.seconds = seconds_since(t0);
  return out;
}

struct Replication {
  std::vector<MtRun> full, no_ast, no_relnet;
  std::vector<double> er_accuracy;
  double er_seconds = 0.0;
};

Replication replicate(const Dataset& data) {
  Replication rep;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    rep.full.push_back(run_mtkgnn(data, bench_config(ModelKind::mt_kgnn, seed)));
    const auto t0 = Clock::now();
    const TrainConfig er = bench_config(ModelKind::er_mlp, seed);
    const auto r = train(data, er);
    const auto model = make_triplet_model(er.model);
    rep.er_accuracy.push_back(
        evaluate_classification(*model, r.checkpoint.params, data).test_accuracy);
    rep.er_seconds += seconds_since(t0);
    TrainConfig c = bench_config(ModelKind::mt_kgnn, seed);
    c.use_ast = false;
    rep.no_ast.push_back(run_mtkgnn(data, c));
    c = bench_config(ModelKind::mt_kgnn, seed);
    c.use_relnet = false;
    rep.no_relnet.push_back(run_mtkgnn(data, c));
    std::cerr << "  replication seed " << seed << " done\n";
  }
  return rep;
}

Outcome table4_direction(const Replication& rep) {
  std::vector<double> mt;
  double secs = rep.er_seconds;
  for (const auto& r : rep.full) {
    mt.push_back(r.accuracy);
    secs += r.seconds;
  }
  const double diff = mean(mt) - mean(rep.er_accuracy);
  return {diff >= 0.0 && secs < 600.0,
          "mean test accuracy MT-KGNN " + fmt(mean(mt)) + " vs ER-MLP " +
              fmt(mean(rep.er_accuracy)) + " (diff " + fmt(diff) + "), " + fmt(secs, 1) + " s"};
}

Outcome table5_gap(const Dataset& data, const Replication& rep) {
  const auto t0 = Clock::now();
  const MtRun& mt = rep.full.front();  // seed 0
  double best_probe = 1e300;
  std::string best_name;
  std::ostringstream probes;
  for (ModelKind k : kTrainable) {
    if (k == ModelKind::mt_kgnn) continue;
    const auto r = train(data, bench_config(k, 0));
    const auto p =
        probe_linear_regression(r.checkpoint.params.value(kEntityEmb), data, ProbeConfig{}, 0);
    probes << " " << to_string(k) << "=" << fmt(p.metrics.rmse);
    if (p.metrics.rmse < best_probe) {
      best_probe = p.metrics.rmse;
      best_name = to_string(k);
    }
  }
  const auto init = r_init_embeddings(data.entities.size(), 20, 0);
  const auto ri = probe_linear_regression(init, data, ProbeConfig{}, 0);
  const double ri_r2 = ri.metrics.r2.value_or(0.0);
  const double secs = seconds_since(t0) + mt.seconds;
  const bool pass = mt.rmse < best_probe && mt.r2 > 0.0 && ri_r2 <= 0.05 && secs < 900.0;
  return {pass, "MT-KGNN direct RMSE " + fmt(mt.rmse) + " R2 " + fmt(mt.r2) +
                    "; probe RMSE" + probes.str() + " (best " + best_name + "); R-INIT R2 " +
                    fmt(ri_r2) + "; " + fmt(secs, 1) + " s"};
}

Outcome ablation_direction(const Replication& rep) {
  std::vector<double> full_rmse, full_r2, no_ast_rmse, no_relnet_r2;
  for (std::size_t i = 0; i < rep.full.size(); ++i) {
    full_rmse.push_back(rep.full[i].rmse);
    full_r2.push_back(rep.full[i].r2);
    no_ast_rmse.push_back(rep.no_ast[i].rmse);
    no_relnet_r2.push_back(rep.no_relnet[i].r2);
  }
  const bool pass = mean(no_ast_rmse) > mean(full_rmse) && mean(no_relnet_r2) < mean(full_r2);
  return {pass, "mean RMSE full " + fmt(mean(full_rmse)) + " vs -AST " + fmt(mean(no_ast_rmse)) +
                    "; mean R2 full " + fmt(mean(full_r2)) + " vs -RelNet " +
                    fmt(mean(no_relnet_r2))};
}

// ---- 8. R-GUESS -------------------------------------------------------------

Outcome r_guess_sanity() {
  const std::size_t n = 100000;
  const auto guesses = r_guess(n, 1);
  Rng target_rng(2);
  std::vector<double> targets(n);
  for (auto& t : targets) t = target_rng.uniform();
  const double rmse = regression_metrics(targets, guesses).rmse;
  // Monte-Carlo cross-check with an unrelated generator.
  std::mt19937_64 gen(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = u(gen) - u(gen);
    sq += d * d;
  }
  const double mc = std::sqrt(sq / static_cast<double>(n));
  const double closed = std::sqrt(1.0 / 6.0);
  return {std::abs(rmse - closed) <= 0.01 && std::abs(mc - closed) <= 0.01,
          "R-GUESS RMSE " + fmt(rmse) + ", Monte-Carlo " + fmt(mc) + ", closed form " +
              fmt(closed)};
}

// ---- 9. determinism ---------------------------------------------------------

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mtkgnn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) throw std::runtime_error("cli failed: " + err.str());
  return code;
}

std::string without_wall_clock(const std::string& log) {
  std::istringstream in(log);
  std::string line, out;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    j.erase("wall_ms");
    out += j.dump() + "\n";
  }
  return out;
}

Outcome determinism() {
  testing::TempDir dir;
  const std::string data = (dir / "man").string();
  const std::string out = (dir / "out").string();
  cli({"generate", "--out", (dir / "raw").string(), "--prepare", data, "--entities", "150",
       "--seed", "4"});
  const std::vector<std::string> small{"--dim", "6", "--hidden", "8", "--attr-hidden", "8",
                                       "--epochs", "4", "--full-sweep", "--seed", "3"};
  std::size_t files = 0;
  for (const std::string model : {"mt-kgnn", "transe", "ntn"}) {
    for (const std::string run : {"a", "b"}) {
      std::vector<std::string> args{"train", "--data", data, "--out", out, "--run-id",
                                    model + run, "--model", model};
      args.insert(args.end(), small.begin(), small.end());
      cli(args);
      const auto ck = (std::filesystem::path(out) / (model + run) / "checkpoint.bin").string();
      cli({"eval", "--data", data, "--checkpoint", ck, "--task", "triplet"});
      cli({"eval", "--data", data, "--checkpoint", ck, "--task", "attribute", "--probe"});
    }
    const auto a = std::filesystem::path(out) / (model + "a");
    const auto b = std::filesystem::path(out) / (model + "b");
    for (const char* f : {"checkpoint.bin", "config.json", "report.json", "attribute_report.json"}) {
      ++files;
      if (testing::read_file(a / f) != testing::read_file(b / f)) {
        return {false, model + "/" + f + " differs between identical runs"};
      }
    }
    ++files;
    if (without_wall_clock(testing::read_file(a / "log.jsonl")) !=
        without_wall_clock(testing::read_file(b / "log.jsonl"))) {
      return {false, model + "/log.jsonl differs beyond wall-clock fields"};
    }
  }
  std::string first;
  for (const std::string run : {"bench1", "bench2"}) {
    std::vector<std::string> args{"bench", "--data", data, "--out", out, "--run-id", run,
                                  "--models", "mt-kgnn", "transr", "r-guess", "--seeds", "0,1"};
    args.insert(args.end(), small.begin(), small.end() - 2);
    cli(args);
    const auto csv = testing::read_file(std::filesystem::path(out) / run / "bench.csv");
    const auto txt = testing::read_file(std::filesystem::path(out) / run / "bench.txt");
    if (first.empty()) {
      first = csv + txt;
    } else if (first != csv + txt) {
      return {false, "bench outputs differ between identical runs"};
    }
    files += 2;
  }
  return {true, std::to_string(files) + " artifacts byte-identical across repeated runs"};
}

// ---- 10. overfit ------------------------------------------------------------

Outcome overfit() {
  const Dataset data = testing::toy_dataset(16, 2, 2, 8, 99);
  std::ostringstream detail;
  bool pass = true;
  for (ModelKind k : kTrainable) {
    TrainConfig c;
    c.model.kind = k;
    c.model.dim = 10;
    c.model.hidden = 10;
    c.model.attr_hidden = 10;
    c.model.dropout = 0.0;
    c.batch_size = 16;  // the whole fixed batch every step
    c.epochs = 500;
    c.lr = 0.01;
    const auto r = train(data, c);
    const auto model = make_triplet_model(c.model);
    const auto dev = labeled_split(data, Split::dev);
    const auto threshold =
        select_threshold(model->plausibility(r.checkpoint.params, dev.triplets), dev.labels)
            .threshold;
    const auto tr = labeled_split(data, Split::train);
    const double acc =
        accuracy(model->plausibility(r.checkpoint.params, tr.triplets), tr.labels, threshold);
    detail << " " << to_string(k) << "=" << fmt(acc, 3);
    pass = pass && acc == 1.0;
  }
  return {pass, "train accuracy after 500 steps:" + detail.str()};
}

}  // namespace
}  // namespace mtkgnn

int main() {
  using namespace mtkgnn;
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
  };
  std::optional<Dataset> small_data;
  std::optional<Dataset> data;
  std::optional<Replication> rep;
  const auto get_small = [&]() -> const Dataset& {
    if (!small_data) small_data = synthetic(300, 5);
    return *small_data;
  };
  const auto get_data = [&]() -> const Dataset& {
    if (!data) data = synthetic(2000, 1);
    return *data;
  };
  const auto get_rep = [&]() -> const Replication& {
    if (!rep) rep = replicate(get_data());
    return *rep;
  };
  const std::vector<Criterion> criteria{
      {1, "gradient correctness", gradients},
      {2, "metric oracles", metric_oracles},
      {3, "constraint invariants", [&] { return constraints(get_data()); }},
      {4, "reduction to ER-MLP", [&] { return reduction(get_small()); }},
      {5, "triplet accuracy direction", [&] { return table4_direction(get_rep()); }},
      {6, "attribute prediction gap", [&] { return table5_gap(get_data(), get_rep()); }},
      {7, "ablation direction", [&] { return ablation_direction(get_rep()); }},
      {8, "R-GUESS sanity", r_guess_sanity},
      {9, "determinism", determinism},
      {10, "overfit oracle", overfit},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << std::setw(2) << c.id << " " << (o.pass ? "PASS" : "FAIL")
              << "  " << c.name << ": " << o.detail << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed")
            << std::endl;
  return failures ? 1 : 0;
}
