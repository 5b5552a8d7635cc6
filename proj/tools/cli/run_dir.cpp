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

#include "run_dir.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>

#include <fmt/core.h>

#include "cdcgcn/types.hpp"

namespace cdcgcn::cli {

namespace fs = std::filesystem;

std::uint64_t fingerprint(const std::vector<fs::path>& files) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(fmt::format("cannot read '{}'", path.string()));
    char buf[1 << 14];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
      for (std::streamsize k = 0; k < in.gcount(); ++k) {
        h ^= static_cast<unsigned char>(buf[k]);
        h *= 0x100000001b3ULL;
      }
    }
  }
  return h;
}

std::string hex(std::uint64_t value) { return fmt::format("{:016x}", value); }

RunLock::RunLock(const fs::path& run_dir) {
  fs::create_directories(run_dir);
  const auto path = run_dir / ".lock";
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
  if (fd_ < 0) throw DataError(fmt::format("cannot open lock file '{}'", path.string()));
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw UsageError(fmt::format("run directory '{}' is in use by another process",
                                 run_dir.string()));
  }
}

RunLock::~RunLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

RunDirectory::RunDirectory(fs::path root) : root_(std::move(root)) {
  for (const auto& d : {splits(), community(), checkpoints(), logs(), reports()}) {
    fs::create_directories(d);
  }
  if (fs::exists(manifest_path())) {
    std::ifstream in(manifest_path());
    try {
      manifest_ = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(fmt::format("corrupt manifest '{}': {}", manifest_path().string(), e.what()));
    }
  } else {
    manifest_ = {{"stages", nlohmann::json::object()}};
  }
}

std::string RunDirectory::dataset_fingerprint() const {
  const auto dir = splits();
  if (!fs::exists(dir / "train.tsv")) return "";
  return hex(fingerprint({dir / "users.tsv", dir / "items.tsv", dir / "train.tsv",
                          dir / "val.tsv", dir / "test.tsv"}));
}

std::string RunDirectory::community_fingerprint() const {
  if (!fs::exists(communities_file())) return "";
  return hex(fingerprint({communities_file()}));
}

bool RunDirectory::has_stage(const std::string& name) const {
  return manifest_["stages"].contains(name);
}

const nlohmann::json& RunDirectory::stage(const std::string& name) const {
  require(name);
  return manifest_["stages"][name];
}

void RunDirectory::require(const std::string& name) const {
  if (!has_stage(name)) {
    throw DataError(fmt::format("missing upstream artifact: stage '{}' has not run in '{}'", name,
                                root_.string()));
  }
  const auto& entry = manifest_["stages"][name];
  for (const auto& artifact : entry["artifacts"]) {
    const fs::path p = root_ / artifact.get<std::string>();
    if (!fs::exists(p)) {
      throw DataError(fmt::format("missing upstream artifact '{}' (stage '{}')", p.string(), name));
    }
  }
  if (name != "split" && entry.value("dataset_fingerprint", "") != dataset_fingerprint()) {
    throw DataError(fmt::format("stage '{}' was built from a different split; rerun it", name));
  }
  const std::string comm = entry.value("community_fingerprint", "");
  if (name != "split" && name != "detect" && !comm.empty() && comm != community_fingerprint()) {
    throw DataError(fmt::format("stage '{}' was built from other communities; rerun it", name));
  }
}

void RunDirectory::record(const std::string& name, const Config& config,
                          const std::vector<fs::path>& artifacts,
                          const std::vector<std::pair<std::string, double>>& timings) {
  nlohmann::json entry;
  entry["config"] = config.values();
  nlohmann::json files = nlohmann::json::array();
  for (const auto& a : artifacts) {
    if (!fs::exists(a)) throw DataError(fmt::format("stage '{}' did not produce '{}'", name, a.string()));
    files.push_back(fs::relative(a, root_).generic_string());
  }
  entry["artifacts"] = files;
  entry["dataset_fingerprint"] = dataset_fingerprint();
  entry["community_fingerprint"] = community_fingerprint();
  nlohmann::json t = nlohmann::json::object();
  for (const auto& [stage, seconds] : timings) t[stage] = seconds;
  entry["timings_seconds"] = t;
  manifest_["stages"][name] = entry;
  manifest_["config"] = config.values();
  manifest_["dataset_fingerprint"] = dataset_fingerprint();
  manifest_["community_fingerprint"] = community_fingerprint();

  const auto tmp = manifest_path().string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << manifest_.dump(2) << '\n';
    if (!out) throw DataError(fmt::format("cannot write '{}'", tmp));
  }
  fs::rename(tmp, manifest_path());
}

void StageTimer::lap(std::string name) {
  const auto now = std::chrono::steady_clock::now();
  timings_.emplace_back(std::move(name), std::chrono::duration<double>(now - start_).count());
  start_ = now;
}

}  // namespace cdcgcn::cli
