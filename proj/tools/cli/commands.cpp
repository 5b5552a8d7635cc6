// Copyright 2026 The cdcgcn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <memory>

#include <fmt/core.h>

#include "cdcgcn/analysis.hpp"
#include "cdcgcn/baselines.hpp"
#include "cdcgcn/checkpoint.hpp"
#include "cdcgcn/fusion.hpp"
#include "cdcgcn/report.hpp"
#include "cdcgcn/synthetic.hpp"
#include "run_dir.hpp"

namespace cdcgcn::cli {

namespace fs = std::filesystem;

namespace {

struct Loaded {
  InteractionDataset dataset;
  CommunityAssignment communities;
};

InteractionDataset load_dataset(const RunDirectory& run) {
  run.require("split");
  return read_split(run.splits());
}

Loaded load_with_communities(const RunDirectory& run) {
  run.require("detect");
  Loaded l{load_dataset(run), {}};
  l.communities = read_communities(run.communities_file(), l.dataset);
  return l;
}

TrainingConfig training_config(const Config& c) {
  TrainingConfig t;
  t.kind = parse_base_kind(c.str("base"));
  t.dim = c.integer("dim");
  t.layers = c.integer("layers");
  t.learning_rate = c.real("lr");
  t.l2_base = c.real("l2_base");
  t.l2_disc = c.real("l2_disc");
  t.batch_size = c.integer("batch_size");
  t.epochs = c.integer("epochs");
  t.seed = c.seed();
  t.alpha = c.flag("no_cns") ? 0.0 : c.real("alpha");
  t.beta = c.real("beta");
  t.eval_every = c.integer("eval_every");
  t.patience = c.integer("patience");
  t.validate();
  return t;
}

CdcgcnOptions cdcgcn_options(const Config& c) {
  CdcgcnOptions o;
  o.cgcn_layers = c.flag("no_cgcn") ? 0 : c.integer("cgcn_layers");
  o.use_discriminator = !c.flag("no_cd");
  o.adaptive_inference = !c.flag("no_uis");
  o.hidden = c.integer("hidden");
  o.global_dim = c.integer("global_dim");
  return o;
}

BaselineConfig baseline_config(const Config& c) {
  BaselineConfig b{.lambda = c.real("lambda"),
                   .gamma = c.real("gamma"),
                   .delta = c.real("delta"),
                   .pool_size = c.integer("pool_size")};
  b.validate();
  return b;
}

fs::path base_checkpoint(const RunDirectory& run) { return run.checkpoints() / "base.ckpt"; }

fs::path model_checkpoint(const RunDirectory& run, const std::string& model) {
  if (model == "base") return base_checkpoint(run);
  return run.checkpoints() / (model + ".ckpt");
}

fs::path mmr_lists_file(const RunDirectory& run) { return run.reports() / "mmr_lists.tsv"; }

void write_lists(const fs::path& path, std::span<const RankedList> lists) {
  std::ofstream out(path);
  out << "user\trank\titem\tscore\n";
  for (const auto& l : lists) {
    for (std::size_t r = 0; r < l.items.size(); ++r) {
      out << fmt::format("{}\t{}\t{}\t{:.17g}\n", l.user, r, l.items[r], l.scores[r]);
    }
  }
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
}

std::vector<RankedList> read_lists(const fs::path& path, Index num_users) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::vector<RankedList> lists(static_cast<std::size_t>(num_users));
  for (Index u = 0; u < num_users; ++u) lists[u].user = u;
  std::string header;
  std::getline(in, header);
  Index user, item;
  std::size_t rank;
  double score;
  while (in >> user >> rank >> item >> score) {
    if (user < 0 || user >= num_users) throw DataError(fmt::format("{}: bad user {}", path.string(), user));
    lists[user].items.push_back(item);
    lists[user].scores.push_back(score);
  }
  return lists;
}

// Scorer for a trained model; the base scorer is kept alive alongside a fused one.
struct ModelScorer {
  std::unique_ptr<EmbeddingScorer> primary;
  std::unique_ptr<EmbeddingScorer> base;
  std::unique_ptr<FusedScorer> fused;
  std::vector<double> eta;

  const Scorer& get() const {
    if (fused) return *fused;
    return *primary;
  }
};

ModelScorer load_scorer(const RunDirectory& run, const std::string& model,
                        const InteractionDataset& ds) {
  ModelScorer s;
  if (model == "cdcgcn") {
    run.require("train");
    auto cd = load_cdcgcn_checkpoint(model_checkpoint(run, model));
    s.primary = std::make_unique<EmbeddingScorer>(cd.base, ds.graph);
    if (!cd.eta.empty()) {
      run.require("pretrain");
      s.base = std::make_unique<EmbeddingScorer>(load_checkpoint(base_checkpoint(run)), ds.graph);
      s.eta = std::move(cd.eta);
      s.fused = std::make_unique<FusedScorer>(*s.primary, *s.base, s.eta);
    }
    return s;
  }
  if (model == "base") {
    run.require("pretrain");
  } else if (model == "fairness" || model == "ips") {
    run.require("baseline_" + model);
  } else {
    throw UsageError(fmt::format("model '{}' has no scorer (expected base|cdcgcn|fairness|ips)", model));
  }
  s.primary = std::make_unique<EmbeddingScorer>(load_checkpoint(model_checkpoint(run, model)), ds.graph);
  return s;
}

std::vector<RankedList> model_lists(const RunDirectory& run, const std::string& model,
                                    const InteractionDataset& ds, int k) {
  if (model == "mmr") {
    run.require("baseline_mmr");
    return read_lists(mmr_lists_file(run), ds.num_users);
  }
  return rank_topk(load_scorer(run, model, ds).get(), ds.graph, k);
}

void print_fit(const FitResult& fit) {
  fmt::print("epochs run: {}  best epoch: {}  best val Recall@20: {:.4f}{}\n", fit.log.size(),
             fit.best_epoch, fit.best_recall, fit.early_stopped ? "  (early stop)" : "");
}

}  // namespace

void cmd_split(const Config& c) {
  const fs::path input = c.str("input");
  if (input.empty()) throw UsageError("split needs --input");
  StageTimer timer;
  RunDirectory run(c.str("out"));
  const auto raw = load_interactions(input, parse_input_format(c.str("format")));
  const SplitRatios ratios{c.real("train_ratio"), c.real("val_ratio"), c.real("test_ratio")};
  const auto mode = c.str("split_mode");
  if (mode != "per_user" && mode != "global") {
    throw UsageError(fmt::format("split_mode '{}' (expected per_user|global)", mode));
  }
  const auto ds = split_dataset(raw, ratios, c.seed(),
                                mode == "global" ? SplitMode::kGlobal : SplitMode::kPerUser);
  timer.lap("split");
  write_split(ds, run.splits(), c.seed(), ratios);
  timer.lap("write");
  const auto d = run.splits();
  run.record("split", c,
             {d / "train.tsv", d / "val.tsv", d / "test.tsv", d / "users.tsv", d / "items.tsv",
              d / "meta.json"},
             timer.timings());
  fmt::print("{} users, {} items; train {} / val {} / test {}; {} duplicates dropped\n",
             ds.num_users, ds.num_items, ds.train.size(), ds.val.size(), ds.test.size(),
             raw.duplicates_dropped);
}

void cmd_detect(const Config& c) {
  StageTimer timer;
  RunDirectory run(c.str("out"));
  const auto ds = load_dataset(run);
  const auto a = detect_communities(ds.graph, {.seed = c.seed(), .resolution = c.real("resolution")});
  timer.lap("louvain");
  write_communities(run.communities_file(), ds, a);
  const auto profile = ilfbi_init(ds.graph, a);
  run.record("detect", c, {run.communities_file()}, timer.timings());
  fmt::print("{} communities, modularity {:.4f}, mean ILFBI-init {:.4f}\n", a.num_communities,
             a.modularity, profile.mean_ilfbi_init);
}

void cmd_pretrain(const Config& c) {
  StageTimer timer;
  RunDirectory run(c.str("out"));
  const auto [ds, a] = load_with_communities(run);
  const auto cfg = training_config(c);
  const auto result = pretrain(ds, &a, cfg);
  timer.lap("train");
  auto model = result.model;
  round_to_float(model.tables);
  save_checkpoint(base_checkpoint(run), model);
  const auto log = run.logs() / "pretrain.tsv";
  write_training_log(log, result.fit.log);
  run.record("pretrain", c, {base_checkpoint(run), log}, timer.timings());
  print_fit(result.fit);
}

void cmd_train(const Config& c) {
  StageTimer timer;
  RunDirectory run(c.str("out"));
  const auto [ds, a] = load_with_communities(run);
  const auto cfg = training_config(c);
  const auto options = cdcgcn_options(c);
  std::unique_ptr<EmbeddingModel> pretrained;
  if (options.adaptive_inference) {
    run.require("pretrain");
    pretrained = std::make_unique<EmbeddingModel>(load_checkpoint(base_checkpoint(run)));
    if (pretrained->kind != cfg.kind) {
      throw UsageError(fmt::format("pretrained model is {}, --base is {}",
                                   to_string(pretrained->kind), to_string(cfg.kind)));
    }
  }
  auto result = train_cdcgcn(ds, a, pretrained.get(), cfg, options);
  timer.lap("train");
  if (!options.adaptive_inference) result.model.eta.clear();
  round_to_float(result.model.base.tables);
  round_to_float(result.model.disc);
  const auto ckpt = model_checkpoint(run, "cdcgcn");
  save_cdcgcn_checkpoint(ckpt, result.model);
  const auto log = run.logs() / "train.tsv";
  write_training_log(log, result.fit.log);
  run.record("train", c, {ckpt, log}, timer.timings());
  print_fit(result.fit);
}

void cmd_baseline(const Config& c) {
  StageTimer timer;
  RunDirectory run(c.str("out"));
  const auto [ds, a] = load_with_communities(run);
  const auto b = baseline_config(c);
  const auto method = c.str("method");
  if (method == "mmr") {
    run.require("pretrain");
    const EmbeddingScorer scorer(load_checkpoint(base_checkpoint(run)), ds.graph);
    const auto ks = c.integers("ks");
    const int k = *std::max_element(ks.begin(), ks.end());
    const auto lists = mmr_rank(scorer, ds.graph, a, b.lambda, k, std::max(b.pool_size, k));
    timer.lap("rerank");
    write_lists(mmr_lists_file(run), lists);
    run.record("baseline_mmr", c, {mmr_lists_file(run)}, timer.timings());
    fmt::print("MMR lists (lambda {}, pool {}) for {} users\n", b.lambda, b.pool_size, lists.size());
    return;
  }
  ObjectiveFactory factory;
  if (method == "fairness") {
    factory = fairness_objective(a, b.gamma);
  } else if (method == "ips") {
    factory = ips_objective(a, b.delta);
  } else {
    throw UsageError(fmt::format("unknown baseline '{}' (expected mmr|fairness|ips)", method));
  }
  auto cfg = training_config(c);
  cfg.alpha = 0.0;
  const auto result = pretrain(ds, &a, cfg, factory);
  timer.lap("train");
  auto model = result.model;
  round_to_float(model.tables);
  const auto ckpt = model_checkpoint(run, method);
  save_checkpoint(ckpt, model);
  const auto log = run.logs() / (method + ".tsv");
  write_training_log(log, result.fit.log);
  run.record("baseline_" + method, c, {ckpt, log}, timer.timings());
  print_fit(result.fit);
}

void cmd_eval(const Config& c) {
  StageTimer timer;
  RunDirectory run(c.str("out"));
  const auto [ds, a] = load_with_communities(run);
  const auto model = c.str("model");
  const auto which = c.str("test");
  std::vector<Interaction> test;
  if (which == "full") {
    test = ds.test;
  } else if (which == "debiased") {
    run.require("debias");
    test = read_edge_list(run.debiased_test_file());
  } else {
    throw UsageError(fmt::format("test '{}' (expected full|debiased)", which));
  }
  const auto ks = c.integers("ks");
  const int max_k = *std::max_element(ks.begin(), ks.end());
  const auto lists = model_lists(run, model, ds, max_k);
  for (const auto& l : lists) {
    const auto available = static_cast<std::size_t>(ds.num_items - ds.graph.user_degree(l.user));
    if (model == "mmr" && l.items.size() < std::min<std::size_t>(max_k, available)) {
      throw DataError(fmt::format("MMR lists are shorter than k={}; rerun baseline with --ks", max_k));
    }
  }
  auto report = evaluate_lists(lists, InteractionDataset::group_by_user(test, ds.num_users), a, ks);
  timer.lap("evaluate");
  report.set_meta("model", model);
  report.set_meta("test", which);
  report.set_meta("seed", c.str("seed"));
  report.set_meta("dataset", run.dataset_fingerprint());
  report.set_meta("communities", run.community_fingerprint());
  const auto path = run.reports() / fmt::format("{}_{}.kv", model, which);
  report.save(path);
  fs::path table = path;
  table.replace_extension(".txt");
  run.record(fmt::format("eval_{}_{}", model, which), c, {path, table}, timer.timings());
  fmt::print("{}", report.to_table());
}

void cmd_debias(const Config& c) {
  StageTimer timer;
  RunDirectory run(c.str("out"));
  const auto [ds, a] = load_with_communities(run);
  const auto reduced = build_debiased_test(ds, a, c.seed());
  write_edge_list(run.debiased_test_file(), reduced);
  timer.lap("debias");
  run.record("debias", c, {run.debiased_test_file()}, timer.timings());
  fmt::print("test {} -> debiased {}\n", ds.test.size(), reduced.size());
}

void cmd_export(const Config& c) {
  StageTimer timer;
  RunDirectory run(c.str("out"));
  const auto [ds, a] = load_with_communities(run);
  const auto model = c.str("model");
  const int k = c.integer("k");
  std::vector<fs::path> artifacts;
  if (model != "mmr") {
    const auto scorer = load_scorer(run, model, ds);
    const auto emb = run.reports() / fmt::format("embeddings_{}.tsv", model);
    export_embeddings(scorer.primary->tables(), a, emb);
    artifacts.push_back(emb);
  }
  const auto lists = model_lists(run, model, ds, k);
  const auto rows = user_group_report(ilfbi_init(ds.graph, a), lists, a, k);
  const auto groups = run.reports() / fmt::format("user_groups_{}.tsv", model);
  {
    std::ofstream out(groups);
    out << "lower\tupper\tusers\tmean_ilfbi_init\tmean_ilfbi\tincrement\n";
    for (const auto& r : rows) {
      if (!r.present) {
        out << fmt::format("{}\t{}\t0\tNA\tNA\tNA\n", r.lower, r.upper);
        continue;
      }
      out << fmt::format("{}\t{}\t{}\t{:.6f}\t{:.6f}\t{:.6f}\n", r.lower, r.upper, r.users,
                         r.mean_ilfbi_init, r.mean_ilfbi, r.increment);
    }
  }
  artifacts.push_back(groups);
  timer.lap("export");
  run.record("export_" + model, c, artifacts, timer.timings());
  for (const auto& p : artifacts) fmt::print("wrote {}\n", p.string());
}

void cmd_sweep(const Config& c) {
  StageTimer timer;
  RunDirectory run(c.str("out"));
  const auto [ds, a] = load_with_communities(run);
  const auto options = cdcgcn_options(c);
  std::unique_ptr<EmbeddingModel> pretrained;
  std::unique_ptr<EmbeddingScorer> base_scorer;
  if (options.adaptive_inference) {
    run.require("pretrain");
    pretrained = std::make_unique<EmbeddingModel>(load_checkpoint(base_checkpoint(run)));
    base_scorer = std::make_unique<EmbeddingScorer>(*pretrained, ds.graph);
  }
  const auto test = InteractionDataset::group_by_user(ds.test, ds.num_users);
  const auto alphas = c.reals("alpha");
  const auto betas = c.reals("beta");
  const int ks[] = {20};
  const auto path = run.reports() / "sweep.tsv";
  std::ofstream out(path);
  out << "alpha\tbeta\tprecision20\tilfbi20\n";
  fmt::print("alpha\tbeta\tP@20\tILFBI@20\n");
  for (double beta : betas) {
    for (double alpha : alphas) {
      Config point = c;
      point.set("alpha", fmt::format("{}", alpha));
      point.set("beta", fmt::format("{}", beta));
      const auto cfg = training_config(point);
      const auto result = train_cdcgcn(ds, a, pretrained.get(), cfg, options);
      const EmbeddingScorer cd(result.model.base, ds.graph);
      std::unique_ptr<FusedScorer> fused;
      if (base_scorer) fused = std::make_unique<FusedScorer>(cd, *base_scorer, result.model.eta);
      const Scorer& scorer = fused ? static_cast<const Scorer&>(*fused) : cd;
      const auto report = evaluate_lists(rank_topk(scorer, ds.graph, 20), test, a, ks);
      const auto& m = report.at(20);
      const auto row = fmt::format("{}\t{}\t{:.6f}\t{:.6f}\n", alpha, beta, m.precision, m.ilfbi);
      out << row;
      fmt::print("{}", row);
      std::fflush(stdout);
      timer.lap(fmt::format("alpha={},beta={}", alpha, beta));
    }
  }
  out.close();
  run.record("sweep", c, {path}, timer.timings());
}

void cmd_generate(const Config& c) {
  const fs::path output = c.str("input");
  if (output.empty()) throw UsageError("generate needs --input (the file to write)");
  PlantedCommunityConfig g;
  g.users = c.integer("users");
  g.items = c.integer("items");
  g.communities = c.integer("communities");
  g.mean_degree = c.real("mean_degree");
  g.seed = c.seed();
  g.validate();
  if (output.has_parent_path()) fs::create_directories(output.parent_path());
  const auto raw = generate_planted(g);
  write_interactions(output, raw);
  fmt::print("wrote {} interactions to {}\n", raw.edges.size(), output.string());
}

}  // namespace cdcgcn::cli
