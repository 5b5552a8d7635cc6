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

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace cdcgcn::cli {

// FNV-1a over the bytes of the given files, in order.
std::uint64_t fingerprint(const std::vector<std::filesystem::path>& files);
std::string hex(std::uint64_t value);

// Exclusive advisory lock on <run>/.lock for the lifetime of the object.
class RunLock {
 public:
  explicit RunLock(const std::filesystem::path& run_dir);
  ~RunLock();
  RunLock(const RunLock&) = delete;
  RunLock& operator=(const RunLock&) = delete;

 private:
  int fd_ = -1;
};

// runs/<name>/{splits,community,checkpoints,logs,reports} plus manifest.json.
class RunDirectory {
 public:
  explicit RunDirectory(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path splits() const { return root_ / "splits"; }
  std::filesystem::path community() const { return root_ / "community"; }
  std::filesystem::path checkpoints() const { return root_ / "checkpoints"; }
  std::filesystem::path logs() const { return root_ / "logs"; }
  std::filesystem::path reports() const { return root_ / "reports"; }
  std::filesystem::path manifest_path() const { return root_ / "manifest.json"; }

  std::filesystem::path communities_file() const { return community() / "communities.tsv"; }
  std::filesystem::path debiased_test_file() const { return splits() / "test_debiased.tsv"; }

  std::string dataset_fingerprint() const;
  std::string community_fingerprint() const;

  // Throws DataError unless `stage` is recorded, its artifacts exist and it
  // was built from the current split.
  void require(const std::string& stage) const;
  bool has_stage(const std::string& stage) const;
  const nlohmann::json& stage(const std::string& stage) const;

  // Records a finished stage and rewrites manifest.json.
  void record(const std::string& stage, const Config& config,
              const std::vector<std::filesystem::path>& artifacts,
              const std::vector<std::pair<std::string, double>>& timings);

  const nlohmann::json& manifest() const { return manifest_; }

 private:
  std::filesystem::path root_;
  nlohmann::json manifest_;
};

class StageTimer {
 public:
  void lap(std::string name);
  const std::vector<std::pair<std::string, double>>& timings() const { return timings_; }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, double>> timings_;
};

}  // namespace cdcgcn::cli
