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

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "cdcgcn/types.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "run_dir.hpp"

namespace {

using cdcgcn::cli::Config;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

const std::vector<std::string> kTrainingKeys{"base", "dim", "layers", "lr", "l2_base",
                                             "batch_size", "epochs", "eval_every", "patience"};
const std::vector<std::string> kAdversarialKeys{"alpha", "beta", "l2_disc", "hidden",
                                                "global_dim", "cgcn_layers"};
const std::vector<std::string> kAblationFlags{"no_cgcn", "no_cd", "no_cns", "no_uis"};

std::string flag_name(const std::string& key) {
  std::string out = "--" + key;
  std::replace(out.begin(), out.end(), '_', '-');
  return out;
}

struct Binding {
  std::string key;
  std::string value;
  bool set = false;
  CLI::Option* option = nullptr;
};

struct Subcommand {
  CLI::App* app = nullptr;
  std::string config_path;
  std::vector<std::unique_ptr<Binding>> bindings;
  std::function<void(const Config&)> run;

  void bind(const std::string& key) {
    const auto* spec = cdcgcn::cli::find_key(key);
    auto b = std::make_unique<Binding>();
    b->key = key;
    const std::string help = fmt::format("{} (default: {})", spec->help,
                                         spec->default_value.empty() ? "none" : spec->default_value);
    b->option = app->add_option(flag_name(key), b->value, help);
    bindings.push_back(std::move(b));
  }

  void bind_flag(const std::string& key) {
    auto b = std::make_unique<Binding>();
    b->key = key;
    b->option = app->add_flag(flag_name(key), b->set, std::string(cdcgcn::cli::find_key(key)->help));
    bindings.push_back(std::move(b));
  }

  Config resolve() const {
    Config config = Config::defaults();
    if (!config_path.empty()) config.merge_file(config_path);
    for (const auto& b : bindings) {
      if (b->option->count() == 0) continue;
      config.set(b->key, b->option->get_expected_min() == 0 ? std::string("true") : b->value);
    }
    return config;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community-debiased graph recommendation pipeline", "cdcgcn"};
  app.require_subcommand(1);
  std::vector<std::unique_ptr<Subcommand>> subs;

  const auto add = [&](const std::string& name, const std::string& description,
                       std::function<void(const Config&)> run, std::vector<std::string> keys,
                       bool ablations = false) {
    auto sub = std::make_unique<Subcommand>();
    sub->app = app.add_subcommand(name, description);
    sub->run = std::move(run);
    sub->app->add_option("--config", sub->config_path, "flat 'key = value' file; flags win")
        ->check(CLI::ExistingFile);
    for (const auto& k : {"out", "seed"}) sub->bind(k);
    for (const auto& k : keys) sub->bind(k);
    if (ablations) {
      for (const auto& k : kAblationFlags) sub->bind_flag(k);
    }
    subs.push_back(std::move(sub));
  };
  const auto concat = [](std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };

  add("split", "split interactions into train/val/test", cdcgcn::cli::cmd_split,
      {"input", "format", "split_mode", "train_ratio", "val_ratio", "test_ratio"});
  add("detect", "Louvain communities on the train graph", cdcgcn::cli::cmd_detect, {"resolution"});
  add("pretrain", "train the base model with BPR", cdcgcn::cli::cmd_pretrain, kTrainingKeys);
  add("train", "train CD-CGCN", cdcgcn::cli::cmd_train,
      concat(kTrainingKeys, kAdversarialKeys), true);
  add("baseline", "run MMR, fairness or IPS", cdcgcn::cli::cmd_baseline,
      concat(kTrainingKeys, {"method", "lambda", "gamma", "delta", "pool_size", "ks"}));
  add("eval", "evaluate a model on the test split", cdcgcn::cli::cmd_eval, {"model", "test", "ks"});
  add("debias", "build the one-item-per-community test split", cdcgcn::cli::cmd_debias, {});
  add("export", "export embeddings and user-group statistics", cdcgcn::cli::cmd_export,
      {"model", "k"});
  add("sweep", "grid over alpha and beta", cdcgcn::cli::cmd_sweep,
      concat(kTrainingKeys, kAdversarialKeys), true);
  add("generate", "write a planted-community interaction file", cdcgcn::cli::cmd_generate,
      {"input", "users", "items", "communities", "mean_degree"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  for (const auto& sub : subs) {
    if (!sub->app->parsed()) continue;
    try {
      const Config config = sub->resolve();
      if (sub->app->get_name() == "generate") {
        sub->run(config);
      } else {
        cdcgcn::cli::RunLock lock(config.str("out"));
        sub->run(config);
      }
      return kOk;
    } catch (const cdcgcn::UsageError& e) {
      fmt::print(stderr, "error: {}\n", e.what());
      return kUsage;
    } catch (const cdcgcn::NumericError& e) {
      fmt::print(stderr, "numeric failure: {}\n", e.what());
      return kNumeric;
    } catch (const cdcgcn::DataError& e) {
      fmt::print(stderr, "data error: {}\n", e.what());
      return kData;
    } catch (const std::exception& e) {
      fmt::print(stderr, "error: {}\n", e.what());
      return kData;
    }
  }
  return kUsage;
}
