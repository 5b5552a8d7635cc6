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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cdcgcn::cli {

struct KeySpec {
  std::string_view name;
  std::string_view default_value;
  std::string_view help;
};

// Every key accepted by the configuration file or as a --flag.
const std::vector<KeySpec>& known_keys();
const KeySpec* find_key(std::string_view name);

// Resolved key -> value map. Values stay textual until a command reads them.
class Config {
 public:
  // All known keys at their defaults.
  static Config defaults();

  // Parses `key = value` lines; '#' starts a comment. Unknown keys and
  // malformed lines throw UsageError naming the file and line.
  void merge_file(const std::filesystem::path& path);
  void merge_text(std::string_view text, std::string_view origin);

  void set(std::string_view key, std::string value);

  const std::string& str(std::string_view key) const;
  double real(std::string_view key) const;
  int integer(std::string_view key) const;
  std::uint64_t seed() const;
  bool flag(std::string_view key) const;
  std::vector<double> reals(std::string_view key) const;
  std::vector<int> integers(std::string_view key) const;

  const std::map<std::string, std::string, std::less<>>& values() const { return values_; }

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

}  // namespace cdcgcn::cli
