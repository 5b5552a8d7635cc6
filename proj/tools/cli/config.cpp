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

#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/core.h>

#include "cdcgcn/types.hpp"

namespace cdcgcn::cli {

const std::vector<KeySpec>& known_keys() {
  static const std::vector<KeySpec> keys{
      {"out", "runs/default", "run directory"},
      {"seed", "42", "seed for splits, initialization and sampling"},
      {"input", "", "interaction file (split) or output path (generate)"},
      {"format", "plain", "input format: plain|hetrec"},
      {"split_mode", "per_user", "per_user|global"},
      {"train_ratio", "0.7", "train share"},
      {"val_ratio", "0.1", "validation share"},
      {"test_ratio", "0.2", "test share"},
      {"resolution", "1.0", "Louvain resolution"},
      {"base", "lightgcn", "base model: mf|lightgcn"},
      {"dim", "64", "embedding size"},
      {"layers", "3", "LightGCN layers"},
      {"lr", "0.001", "Adam learning rate"},
      {"l2_base", "0.001", "L2 on base embeddings"},
      {"l2_disc", "1e-7", "L2 on discriminator parameters"},
      {"batch_size", "2048", "triplets per batch"},
      {"epochs", "1000", "maximum epochs"},
      {"eval_every", "1", "epochs between validations"},
      {"patience", "20", "validations without Recall@20 gain before stopping"},
      {"alpha", "0.3", "community negative sampling probability (list in sweep)"},
      {"beta", "0.5", "adversarial strength (list in sweep)"},
      {"hidden", "64", "discriminator hidden width"},
      {"global_dim", "16", "discriminator global embedding size"},
      {"cgcn_layers", "2", "CGCN propagation layers"},
      {"no_cgcn", "false", "ablation: skip CGCN propagation"},
      {"no_cd", "false", "ablation: drop the discriminator"},
      {"no_cns", "false", "ablation: uniform negatives (alpha = 0)"},
      {"no_uis", "false", "ablation: no user-adaptive fusion"},
      {"method", "mmr", "baseline: mmr|fairness|ips"},
      {"lambda", "0.5", "MMR relevance weight"},
      {"gamma", "0.01", "fairness strength"},
      {"delta", "0.5", "IPS propensity of intra-community interactions"},
      {"pool_size", "1000", "MMR candidate pool"},
      {"model", "cdcgcn", "model to evaluate or export: base|cdcgcn|mmr|fairness|ips"},
      {"test", "full", "test split: full|debiased"},
      {"ks", "20,100", "cutoffs for evaluation"},
      {"k", "20", "cutoff for user groups"},
      {"users", "600", "generate: users"},
      {"items", "1200", "generate: items"},
      {"communities", "6", "generate: planted communities"},
      {"mean_degree", "40", "generate: mean interactions per user"},
  };
  return keys;
}

const KeySpec* find_key(std::string_view name) {
  for (const auto& k : known_keys()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

Config Config::defaults() {
  Config c;
  for (const auto& k : known_keys()) c.values_.emplace(k.name, k.default_value);
  return c;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(fmt::format("{}: '{}' is not a valid number", key, text));
  }
  return value;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) parts.emplace_back(trim(part));
  return parts;
}

}  // namespace

void Config::merge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open config '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  merge_text(buf.str(), path.string());
}

void Config::merge_text(std::string_view text, std::string_view origin) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(fmt::format("{}:{}: expected 'key = value'", origin, line_no));
    }
    const auto key = trim(line.substr(0, eq));
    if (!find_key(key)) {
      throw UsageError(fmt::format("{}:{}: unknown key '{}'", origin, line_no, key));
    }
    set(key, std::string(trim(line.substr(eq + 1))));
  }
}

void Config::set(std::string_view key, std::string value) {
  if (!find_key(key)) throw UsageError(fmt::format("unknown key '{}'", key));
  values_.insert_or_assign(std::string(key), std::move(value));
}

const std::string& Config::str(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw UsageError(fmt::format("unknown key '{}'", key));
  return it->second;
}

double Config::real(std::string_view key) const { return parse_number<double>(key, str(key)); }

int Config::integer(std::string_view key) const { return parse_number<int>(key, str(key)); }

std::uint64_t Config::seed() const { return parse_number<std::uint64_t>("seed", str("seed")); }

bool Config::flag(std::string_view key) const {
  const auto& v = str(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw UsageError(fmt::format("{}: '{}' is not a boolean", key, v));
}

std::vector<double> Config::reals(std::string_view key) const {
  std::vector<double> out;
  for (const auto& part : split_list(str(key))) out.push_back(parse_number<double>(key, part));
  if (out.empty()) throw UsageError(fmt::format("{}: empty list", key));
  return out;
}

std::vector<int> Config::integers(std::string_view key) const {
  std::vector<int> out;
  for (const auto& part : split_list(str(key))) out.push_back(parse_number<int>(key, part));
  if (out.empty()) throw UsageError(fmt::format("{}: empty list", key));
  return out;
}

}  // namespace cdcgcn::cli
