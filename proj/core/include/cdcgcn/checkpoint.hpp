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

#include <filesystem>

#include "cdcgcn/trainer.hpp"

namespace cdcgcn {

inline constexpr char kCheckpointMagic[8] = {'C', 'D', 'C', 'G', 'C', 'K', 'P', 'T'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

// Header (magic, version, kind, m, n, d, L, seed) followed by the user and
// item tables as row-major little-endian float32.
void save_checkpoint(const std::filesystem::path& path, const EmbeddingModel& model);

// Reads the base-model part; a trailing discriminator section is skipped.
EmbeddingModel load_checkpoint(const std::filesystem::path& path);

// Base-model layout plus a "DISC" section (g, h, n_comm, W1, b1, W2, b2,
// globals) and an "ETA" section with one float64 per user.
void save_cdcgcn_checkpoint(const std::filesystem::path& path, const CdcgcnModel& model);
CdcgcnModel load_cdcgcn_checkpoint(const std::filesystem::path& path);

// Rounds every parameter to float32 so an in-memory model equals its reload.
void round_to_float(Discriminator& disc);

}  // namespace cdcgcn
