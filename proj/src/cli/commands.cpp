// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include "mtkgnn/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mtkgnn/data/synthetic.hpp"
#include "mtkgnn/errors.hpp"
#include "mtkgnn/evaluation/classification.hpp"
#include "mtkgnn/evaluation/embeddings.hpp"
#include "mtkgnn/evaluation/probe.hpp"
#include "mtkgnn/evaluation/report.hpp"
#include "mtkgnn/models/init.hpp"
#include "mtkgnn/models/mt_kgnn.hpp"
#include "mtkgnn/training/checkpoint.hpp"
#include "mtkgnn/training/trainer.hpp"

namespace mtkgnn {

namespace fs = std::filesystem;

namespace {

const char* const kMetricOrder[] = {"accuracy", "auc", "rmse", "mae", "r2"};

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("cannot write " + path.string());
}

void write_log(const fs::path& path, const std::vector<EpochLog>& log) {
  std::string text;
  for (const auto& e : log) text += to_json(e).dump() + "\n";
  write_text(path, text);
}

void add_regression(std::map<std::string, double>& m, const RegressionMetrics& r) {
  m["rmse"] = r.rmse;
  m["mae"] = r.mae;
  if (r.r2) m["r2"] = *r.r2;
}

// Train according to cfg, sweeping margins when asked.
TrainResult train_run(const Dataset& data, const RunConfig& cfg, const TrainConfig& tc,
                      const Checkpoint* resume, std::ostream* out) {
  if (cfg.margin_sweep && is_translational(tc.model.kind) && !resume) {
    auto sweep = sweep_margins(data, tc);
    if (out) {
      for (const auto& [m, acc] : sweep.dev_accuracy) {
        *out << "margin " << format_double(m) << ": dev accuracy " << fixed(acc) << "\n";
      }
      *out << "selected margin " << format_double(sweep.best_margin) << "\n";
    }
    return std::move(sweep.best);
  }
  return train(data, tc, {}, resume);
}

const TripletModel* relational_model(const ModelSpec& spec,
                                     std::unique_ptr<TripletModel>& holder) {
  holder = make_triplet_model(spec);
  return holder.get();
}

void require_entity_table(const ParamStore& params) {
  if (!params.contains(kEntityEmb)) throw DataError("checkpoint has no entity embeddings");
}

}  // namespace

CellResult run_cell(const Dataset& data, const RunConfig& cfg, const std::string& model,
                    std::uint64_t seed) {
  CellResult cell;
  cell.model = model;
  cell.seed = seed;
  try {
    const bool has_attr = !data.splits.attr_test.empty();
    if (model == "r-guess") {
      if (!has_attr) throw UsageError("r-guess needs attribute test triplets");
      add_regression(cell.metrics, r_guess(data, seed).metrics);
      return cell;
    }
    if (model == "r-init") {
      if (!has_attr) throw UsageError("r-init needs attribute test triplets");
      const auto emb = r_init_embeddings(data.entities.size(), cfg.train.model.dim, seed);
      add_regression(cell.metrics, probe_linear_regression(emb, data, cfg.probe, seed).metrics);
      return cell;
    }
    TrainConfig tc = cfg.train;
    tc.model.kind = parse_model_kind(model);
    tc.seed = seed;
    const auto result = train_run(data, cfg, tc, nullptr, nullptr);
    const auto& ckpt = result.checkpoint;
    std::unique_ptr<TripletModel> holder;
    const auto* scorer = relational_model(ckpt.config.model, holder);
    if (tc.model.kind != ModelKind::mt_kgnn || tc.use_relnet) {
      const auto c = evaluate_classification(*scorer, ckpt.params, data);
      cell.metrics["accuracy"] = c.test_accuracy;
      cell.metrics["auc"] = c.test_auc;
    }
    if (has_attr) {
      if (tc.model.kind == ModelKind::mt_kgnn) {
        const MtKgnn net(ckpt.config.model);
        add_regression(cell.metrics,
                       predict_attributes(net, ckpt.params, data, Split::test).metrics);
      } else {
        add_regression(cell.metrics, probe_linear_regression(ckpt.params.value(kEntityEmb),
                                                             data, cfg.probe, seed)
                                         .metrics);
      }
    }
  } catch (const std::exception& e) {
    cell.metrics.clear();
    cell.error = e.what();
  }
  return cell;
}

std::map<std::string, std::map<std::string, MetricSummary>> summarize(
    const std::vector<CellResult>& cells) {
  std::map<std::string, std::map<std::string, std::vector<double>>> values;
  for (const auto& c : cells) {
    for (const auto& [k, v] : c.metrics) values[c.model][k].push_back(v);
  }
  std::map<std::string, std::map<std::string, MetricSummary>> out;
  for (const auto& [model, metrics] : values) {
    for (const auto& [k, vs] : metrics) {
      MetricSummary s;
      s.n = vs.size();
      for (double v : vs) s.mean += v;
      s.mean /= static_cast<double>(s.n);
      if (s.n > 1) {
        double ss = 0.0;
        for (double v : vs) ss += (v - s.mean) * (v - s.mean);
        s.std = std::sqrt(ss / static_cast<double>(s.n - 1));
      }
      out[model][k] = s;
    }
  }
  return out;
}

std::string bench_csv(const std::vector<CellResult>& cells) {
  std::string out = "model,seed";
  for (const char* m : kMetricOrder) out += std::string(",") + m;
  out += ",error\n";
  for (const auto& c : cells) {
    out += c.model + "," + std::to_string(c.seed);
    for (const char* m : kMetricOrder) {
      const auto it = c.metrics.find(m);
      out += ",";
      if (it != c.metrics.end()) out += format_double(it->second);
    }
    std::string err = c.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out += "," + err + "\n";
  }
  return out;
}

std::string bench_table(const std::vector<CellResult>& cells) {
  const auto summary = summarize(cells);
  std::vector<std::string> models;
  for (const auto& c : cells) {
    if (std::find(models.begin(), models.end(), c.model) == models.end()) models.push_back(c.model);
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"model"});
  for (const char* m : kMetricOrder) rows[0].push_back(m);
  for (const auto& model : models) {
    std::vector<std::string> row{model};
    const auto it = summary.find(model);
    for (const char* m : kMetricOrder) {
      if (it == summary.end() || !it->second.count(m)) {
        row.push_back("-");
        continue;
      }
      const auto& s = it->second.at(m);
      row.push_back(fixed(s.mean) + " ± " + fixed(s.std));
    }
    rows.push_back(std::move(row));
  }
  // "±" is two bytes but one column wide.
  auto width = [](const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s) w += (c & 0xC0) != 0x80;
    return w;
  };
  std::vector<std::size_t> widths(rows[0].size(), 0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], width(r[i]));
  }
  std::string out;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      out += r[i];
      if (i + 1 < r.size()) out += std::string(widths[i] - width(r[i]) + 2, ' ');
    }
    out += "\n";
  }
  std::size_t failed = 0;
  for (const auto& c : cells) failed += !c.error.empty();
  if (failed) out += std::to_string(failed) + " cell(s) failed; see the CSV\n";
  return out;
}

std::vector<std::string> close_matches(const std::string& name,
                                       const std::vector<std::string>& names,
                                       std::size_t limit) {
  auto distance = [](const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1);
    std::vector<std::size_t> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
      cur[0] = i;
      for (std::size_t j = 1; j <= b.size(); ++j) {
        cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
      }
      std::swap(prev, cur);
    }
    return prev[b.size()];
  };
  const std::size_t budget = std::max<std::size_t>(2, name.size() / 3);
  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const auto& n : names) {
    const auto d = distance(name, n);
    if (d <= budget) scored.emplace_back(d, n);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && i < limit; ++i) out.push_back(scored[i].second);
  return out;
}

namespace {

// Flags shared by train and bench. Only flags given on the command line
// override the config file.
struct TrainFlags {
  std::size_t epochs = 0, batch_size = 0, ast_k = 0, dim = 0, hidden = 0, attr_hidden = 0,
              slices = 0;
  double lr = 0, dropout = 0, margin = 0;
  std::uint64_t seed = 0;
  std::vector<double> margins;
  std::string init, norm, predict_side;
  bool no_at = false, no_ast = false, no_relnet = false, margin_sweep = false,
       full_sweep = false, resample = false;
  std::map<std::string, CLI::Option*> opts;

  void add(CLI::App& app) {
    opts["epochs"] = app.add_option("--epochs", epochs, "Training epochs (outer iterations)");
    opts["batch"] = app.add_option("--batch-size", batch_size, "Relational batch size");
    opts["lr"] = app.add_option("--lr", lr, "Adam learning rate");
    opts["ast"] = app.add_option("--ast-k", ast_k, "AttrNet updates per epoch from AST");
    opts["seed"] = app.add_option("--seed", seed, "Training seed");
    opts["dim"] = app.add_option("--dim", dim, "Embedding size");
    opts["hidden"] = app.add_option("--hidden", hidden, "RelNet / ER-MLP hidden units");
    opts["attr_hidden"] = app.add_option("--attr-hidden", attr_hidden, "AttrNet hidden units");
    opts["slices"] = app.add_option("--slices", slices, "NTN tensor slices");
    opts["dropout"] = app.add_option("--dropout", dropout, "Dropout rate on hidden layers");
    opts["margin"] = app.add_option("--margin", margin, "Hinge margin for TransE/TransR");
    opts["margins"] = app.add_option("--margins", margins, "Candidate margins for --margin-sweep");
    opts["init"] = app.add_option("--init", init, "Layer init: scaled or paper")
                       ->check(CLI::IsMember({"scaled", "paper"}));
    opts["norm"] = app.add_option("--norm", norm, "Translational energy norm: l2 or l1")
                       ->check(CLI::IsMember({"l2", "l1"}));
    opts["side"] = app.add_option("--predict-side", predict_side,
                                  "AttrNet side for predictions: mean, head or tail")
                       ->check(CLI::IsMember({"mean", "head", "tail"}));
    opts["no_at"] = app.add_flag("--no-at", no_at, "Disable attribute training (AT)");
    opts["no_ast"] = app.add_flag("--no-ast", no_ast, "Disable attribute-specific training");
    opts["no_relnet"] = app.add_flag("--no-relnet", no_relnet, "Train AttrNet alone");
    opts["sweep"] = app.add_flag("--margin-sweep", margin_sweep,
                                 "Pick the margin by dev accuracy (translational models)");
    opts["full"] = app.add_flag("--full-sweep", full_sweep,
                                "Train on every batch of the pool each epoch");
    opts["resample"] = app.add_flag("--resample-negatives", resample,
                                    "Draw fresh training negatives every epoch");
  }

  bool given(const char* key) const {
    const auto it = opts.find(key);
    return it != opts.end() && it->second->count() > 0;
  }

  void apply(RunConfig& c) const {
    auto& t = c.train;
    if (given("epochs")) t.epochs = epochs;
    if (given("batch")) t.batch_size = batch_size;
    if (given("lr")) t.lr = lr;
    if (given("ast")) t.ast_k = ast_k;
    if (given("seed")) t.seed = seed;
    if (given("dim")) t.model.dim = dim;
    if (given("hidden")) t.model.hidden = hidden;
    if (given("attr_hidden")) t.model.attr_hidden = attr_hidden;
    if (given("slices")) t.model.ntn_slices = slices;
    if (given("dropout")) t.model.dropout = dropout;
    if (given("margin")) t.model.margin = margin;
    if (given("margins")) t.margins = margins;
    if (given("init")) t.model.init = init == "paper" ? InitScheme::paper : InitScheme::scaled;
    if (given("norm")) t.model.norm = norm == "l1" ? EnergyNorm::l1 : EnergyNorm::l2;
    if (given("side")) {
      t.model.predict_side = predict_side == "head"   ? PredictSide::head
                             : predict_side == "tail" ? PredictSide::tail
                                                      : PredictSide::mean;
    }
    if (opts.empty()) return;
    if (no_at) t.use_at = false;
    if (no_ast) t.use_ast = false;
    if (no_relnet) t.use_relnet = false;
    if (margin_sweep) c.margin_sweep = true;
    if (full_sweep) t.epoch_mode = EpochMode::full_sweep;
    if (resample) t.resample_negatives = true;
  }
};

struct Cli {
  explicit Cli(std::ostream& o) : out(o) {}

  std::ostream& out;

  // prepare
  std::string rel_path, attr_path, manifest_out;
  std::uint64_t prepare_seed = 0;
  SplitRatios ratios;

  // generate
  SyntheticConfig synth;
  std::string gen_out, gen_prepare;

  // train / bench
  std::string data_dir, model = "mt-kgnn", config_path, out_root, run_id, resume_path;
  TrainFlags train_flags;
  TrainFlags bench_flags;
  TrainFlags no_flags;
  const TrainFlags* flags = &no_flags;

  // eval / export / neighbors
  std::string checkpoint, task = "triplet", baseline, report_path, what = "entity",
              export_path, attribute;
  bool probe = false, denormalize = false, clip = false;
  std::uint64_t eval_seed = 0;
  CLI::Option* eval_seed_opt = nullptr;
  std::size_t k = 5;

  // bench
  std::vector<std::string> models;
  std::vector<std::uint64_t> seeds;
  CLI::Option* models_opt = nullptr;
  CLI::Option* model_opt = nullptr;
  CLI::Option* seeds_opt = nullptr;

  fs::path out_dir(const std::string& fallback) const {
    const fs::path root = out_root.empty() ? default_out_root() : fs::path(out_root);
    return root / (run_id.empty() ? fallback : run_id);
  }

  RunConfig base_config() const {
    RunConfig c = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    flags->apply(c);
    return c;
  }

  void print_stats(const Dataset& ds, const DropCounts& dropped) {
    out << "entities " << ds.entities.size() << ", relations " << ds.relations.size()
        << ", attributes " << ds.attributes.size() << "\n";
    out << "split   rel     attr\n";
    for (Split s : {Split::train, Split::dev, Split::test}) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%-6s  %-6zu  %zu\n", to_string(s),
                    ds.splits.rel(s).size(), ds.splits.attr(s).size());
      out << buf;
    }
    out << "dropped from dev/test: rel " << dropped.rel_dev << "/" << dropped.rel_test
        << ", attr " << dropped.attr_dev << "/" << dropped.attr_test << "\n";
  }

  void cmd_prepare() {
    const auto raw = load_triplets(rel_path, attr_path);
    const auto prepared = prepare_dataset(raw, {ratios, prepare_seed});
    write_manifest(prepared.dataset, manifest_out);
    print_stats(prepared.dataset, prepared.dropped);
    out << "manifest written to " << manifest_out << "\n";
  }

  void cmd_generate() {
    const auto g = gen_synthetic(synth);
    fs::create_directories(gen_out);
    write_triplets(g.graph, fs::path(gen_out) / "rel.tsv", fs::path(gen_out) / "attr.tsv");
    out << "generated " << g.graph.rel.size() << " relational and " << g.graph.attr.size()
        << " attribute triplets in " << gen_out << "\n";
    if (!gen_prepare.empty()) {
      const auto prepared = prepare_dataset(g.graph, {ratios, synth.seed});
      write_manifest(prepared.dataset, gen_prepare);
      print_stats(prepared.dataset, prepared.dropped);
      out << "manifest written to " << gen_prepare << "\n";
    }
  }

  void cmd_train() {
    const Dataset data = read_manifest(data_dir);
    std::optional<Checkpoint> resume;
    RunConfig cfg;
    if (!resume_path.empty()) {
      resume = load_checkpoint(resume_path, data);
      if (config_path.empty()) {
        cfg.train = resume->config;
        flags->apply(cfg);
      } else {
        cfg = base_config();
      }
    } else {
      cfg = base_config();
      if (model_opt->count() || config_path.empty()) {
        cfg.train.model.kind = parse_model_kind(model);
      }
    }
    cfg.train.validate();
    const auto dir = out_dir(std::string(to_string(cfg.train.model.kind)) + "-s" +
                             std::to_string(cfg.train.seed));
    fs::create_directories(dir);
    write_run_config(cfg, dir / "config.json");
    const auto result = train_run(data, cfg, cfg.train, resume ? &*resume : nullptr, &out);
    save_checkpoint(result.checkpoint, dir / "checkpoint.bin");
    write_log(dir / "log.jsonl", result.log);
    if (!result.log.empty()) {
      const auto& last = result.log.back();
      out << "epoch " << last.epoch << ": rel_loss " << fixed(last.rel_loss, 6)
          << ", attr_loss " << fixed(last.attr_loss, 6) << "\n";
    }
    out << "checkpoint written to " << (dir / "checkpoint.bin").string() << "\n";
  }

  EvalReport evaluate(const Dataset& data, std::uint64_t& seed_used) {
    if (!baseline.empty()) {
      if (task != "attribute") throw UsageError("--baseline applies to the attribute task");
      RunConfig cfg = base_config();
      cfg.probe.clip = clip;
      seed_used = eval_seed;
      const auto cell = run_cell(data, cfg, baseline, eval_seed);
      if (!cell.error.empty()) throw DataError(cell.error);
      EvalReport r;
      r.task = "attribute_regression";
      r.model = baseline;
      r.seed = eval_seed;
      r.metrics = cell.metrics;
      return r;
    }
    if (checkpoint.empty()) throw UsageError("--checkpoint is required without --baseline");
    const auto ckpt = load_checkpoint(checkpoint, data);
    const auto& spec = ckpt.config.model;
    seed_used = eval_seed_opt->count() ? eval_seed : ckpt.config.seed;
    const std::string name = to_string(spec.kind);
    if (task == "triplet") {
      std::unique_ptr<TripletModel> holder;
      const auto* scorer = relational_model(spec, holder);
      return classification_report(evaluate_classification(*scorer, ckpt.params, data), name,
                                   seed_used);
    }
    if (data.splits.attr_test.empty()) throw DataError("manifest has no attribute test triplets");
    AttributeScores scores;
    if (probe) {
      require_entity_table(ckpt.params);
      ProbeConfig pc = base_config().probe;
      pc.clip = clip;
      scores = probe_linear_regression(ckpt.params.value(kEntityEmb), data, pc, seed_used);
    } else if (spec.kind == ModelKind::mt_kgnn) {
      scores = predict_attributes(MtKgnn(spec), ckpt.params, data, Split::test);
    } else {
      throw UsageError(name + " does not predict attributes; add --probe to fit a linear "
                       "probe on its entity embeddings");
    }
    const auto metrics = denormalize ? denormalized_metrics(scores, data, Split::test)
                                     : scores.metrics;
    auto r = regression_report(metrics, probe ? name + "+probe" : name, seed_used);
    r.warnings.insert(r.warnings.end(), scores.warnings.begin(), scores.warnings.end());
    return r;
  }

  void cmd_eval() {
    const Dataset data = read_manifest(data_dir);
    std::uint64_t seed = 0;
    const auto report = evaluate(data, seed);
    fs::path path = report_path;
    if (path.empty()) {
      path = checkpoint.empty() ? out_dir(baseline + "-s" + std::to_string(seed)) / "report.json"
                                : fs::path(checkpoint).parent_path() /
                                      (task == "triplet" ? "report.json"
                                                         : "attribute_report.json");
    }
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_text(path, to_json(report).dump(2) + "\n");
    out << format_report(report);
    out << "report written to " << path.string() << "\n";
  }

  void cmd_export() {
    const Dataset data = read_manifest(data_dir);
    const auto ckpt = load_checkpoint(checkpoint, data);
    const std::string id = what == "entity" ? kEntityEmb
                     : what == "relation" ? kRelationEmb
                                          : kAttributeEmb;
    const Vocab& vocab = what == "entity" ? data.entities
                         : what == "relation" ? data.relations
                                              : data.attributes;
    if (!ckpt.params.contains(id)) {
      throw UsageError(std::string(to_string(ckpt.config.model.kind)) + " has no " + what + " embeddings");
    }
    write_embeddings(export_path, vocab, ckpt.params.value(id));
    out << "wrote " << vocab.size() << " " << what << " vectors to " << export_path << "\n";
  }

  void cmd_neighbors() {
    const Dataset data = read_manifest(data_dir);
    const auto ckpt = load_checkpoint(checkpoint, data);
    if (!ckpt.params.contains(kAttributeEmb)) {
      throw UsageError("checkpoint has no attribute embeddings (train mt-kgnn)");
    }
    const auto id = data.attributes.find(attribute);
    if (!id) {
      const auto near = close_matches(attribute, data.attributes.names());
      std::string msg = "unknown attribute '" + attribute + "'";
      if (!near.empty()) {
        msg += "; did you mean:";
        for (const auto& n : near) msg += " " + n;
      }
      throw UsageError(msg);
    }
    const auto hits = nearest_rows(ckpt.params.value(kAttributeEmb), *id, k);
    out << attribute << "\n";
    for (const auto& [other, sim] : hits) {
      out << "  " << data.attributes.name(other) << "\t" << fixed(sim) << "\n";
    }
  }

  void cmd_bench() {
    const Dataset data = read_manifest(data_dir);
    RunConfig cfg = base_config();
    if (models_opt->count()) cfg.models = models;
    if (seeds_opt->count()) cfg.seeds = seeds;
    if (cfg.models.empty() || cfg.seeds.empty()) throw UsageError("bench needs models and seeds");
    for (const auto& m : cfg.models) {
      if (m != "r-guess" && m != "r-init") parse_model_kind(m);
    }
    cfg.train.validate();
    const auto dir = out_dir("bench");
    fs::create_directories(dir);
    write_run_config(cfg, dir / "config.json");
    std::vector<CellResult> cells;
    for (const auto& m : cfg.models) {
      for (auto s : cfg.seeds) {
        cells.push_back(run_cell(data, cfg, m, s));
        const auto& c = cells.back();
        out << m << " seed " << s << (c.error.empty() ? ": done" : ": failed: " + c.error)
            << "\n";
      }
    }
    write_text(dir / "bench.csv", bench_csv(cells));
    const auto table = bench_table(cells);
    write_text(dir / "bench.txt", table);
    out << table;
  }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Cli cli(out);
  CLI::App app{"Multi-task knowledge graph embeddings: relations and attributes", "mtkgnn"};
  app.require_subcommand(1);

  auto* prepare = app.add_subcommand("prepare", "Split raw TSV triplets into a manifest");
  prepare->add_option("--rel", cli.rel_path, "Relational triplets TSV")->required();
  prepare->add_option("--attr", cli.attr_path, "Attribute triplets TSV (may be empty)")->required();
  prepare->add_option("--out", cli.manifest_out, "Manifest directory")->required();
  prepare->add_option("--seed", cli.prepare_seed, "Split and corruption seed");
  prepare->add_option("--train-ratio", cli.ratios.train);
  prepare->add_option("--dev-ratio", cli.ratios.dev);
  prepare->add_option("--test-ratio", cli.ratios.test);

  auto* generate = app.add_subcommand("generate", "Write a synthetic knowledge graph");
  generate->add_option("--out", cli.gen_out, "Directory for rel.tsv and attr.tsv")->required();
  generate->add_option("--prepare", cli.gen_prepare, "Also write a manifest here");
  generate->add_option("--entities", cli.synth.n_entities);
  generate->add_option("--relations", cli.synth.n_relations);
  generate->add_option("--attributes", cli.synth.n_attributes);
  generate->add_option("--types", cli.synth.n_types);
  generate->add_option("--noise", cli.synth.noise);
  generate->add_option("--density", cli.synth.attribute_density);
  generate->add_option("--candidates", cli.synth.candidates_per_entity);
  generate->add_option("--relational-share", cli.synth.relational_share,
                       "Weight of the relational latent in attribute values");
  generate->add_option("--seed", cli.synth.seed);

  auto add_run_opts = [&](CLI::App* sub) {
    sub->add_option("--data", cli.data_dir, "Manifest directory")->required();
    sub->add_option("--config", cli.config_path, "JSON run config; flags override it");
    sub->add_option("--out", cli.out_root, "Output root (default $MTKGNN_OUT or ./out)");
    sub->add_option("--run-id", cli.run_id, "Output subdirectory name");
  };

  auto* train_cmd = app.add_subcommand("train", "Train a model");
  add_run_opts(train_cmd);
  cli.model_opt = train_cmd->add_option("--model", cli.model, "cp, rescal, transe, transr, er-mlp, ntn, mt-kgnn");
  train_cmd->add_option("--resume", cli.resume_path, "Continue from a checkpoint");
  cli.train_flags.add(*train_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint");
  eval_cmd->add_option("--data", cli.data_dir, "Manifest directory")->required();
  eval_cmd->add_option("--checkpoint", cli.checkpoint, "Checkpoint file");
  eval_cmd->add_option("--task", cli.task, "triplet or attribute")
      ->check(CLI::IsMember({"triplet", "attribute"}));
  eval_cmd->add_flag("--probe", cli.probe, "Linear probe on frozen entity embeddings");
  eval_cmd->add_option("--baseline", cli.baseline, "r-guess or r-init instead of a checkpoint")
      ->check(CLI::IsMember({"r-guess", "r-init"}));
  eval_cmd->add_flag("--denormalize", cli.denormalize, "Score raw attribute values");
  eval_cmd->add_flag("--clip", cli.clip, "Clip probe predictions to [0, 1]");
  cli.eval_seed_opt = eval_cmd->add_option("--seed", cli.eval_seed, "Probe / baseline seed");
  eval_cmd->add_option("--config", cli.config_path, "JSON run config (probe settings)");
  eval_cmd->add_option("--report", cli.report_path, "Report path");
  eval_cmd->add_option("--out", cli.out_root, "Output root for baseline reports");
  eval_cmd->add_option("--run-id", cli.run_id, "Output subdirectory for baseline reports");

  auto* export_cmd = app.add_subcommand("export", "Write embeddings as TSV");
  export_cmd->add_option("--data", cli.data_dir, "Manifest directory")->required();
  export_cmd->add_option("--checkpoint", cli.checkpoint, "Checkpoint file")->required();
  export_cmd->add_option("--what", cli.what, "entity, relation or attribute")
      ->check(CLI::IsMember({"entity", "relation", "attribute"}));
  export_cmd->add_option("--out", cli.export_path, "Output TSV")->required();

  auto* neighbors = app.add_subcommand("neighbors", "Nearest attributes by cosine similarity");
  neighbors->add_option("--data", cli.data_dir, "Manifest directory")->required();
  neighbors->add_option("--checkpoint", cli.checkpoint, "Checkpoint file")->required();
  neighbors->add_option("--attribute", cli.attribute, "Attribute name")->required();
  neighbors->add_option("--k", cli.k, "Number of neighbors");

  auto* bench = app.add_subcommand("bench", "Train and evaluate models over seeds");
  add_run_opts(bench);
  cli.models_opt = bench->add_option("--models", cli.models,
                                     "Models, plus pseudo-models r-guess and r-init")
                       ->delimiter(',');
  cli.seeds_opt = bench->add_option("--seeds", cli.seeds, "Seeds")->delimiter(',');
  cli.bench_flags.add(*bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::usage);
  }

  try {
    if (prepare->parsed()) cli.cmd_prepare();
    if (generate->parsed()) cli.cmd_generate();
    if (train_cmd->parsed()) {
      cli.flags = &cli.train_flags;
      cli.cmd_train();
    }
    if (eval_cmd->parsed()) cli.cmd_eval();
    if (export_cmd->parsed()) cli.cmd_export();
    if (neighbors->parsed()) cli.cmd_neighbors();
    if (bench->parsed()) {
      cli.flags = &cli.bench_flags;
      cli.cmd_bench();
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::usage);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::data);
  }
  return 0;
}

}  // namespace mtkgnn
