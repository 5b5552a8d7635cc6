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

#include "cdcgcn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <fmt/core.h>

namespace cdcgcn {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char kDiscTag[4] = {'D', 'I', 'S', 'C'};
constexpr char kEtaTag[4] = {'E', 'T', 'A', '\0'};

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw DataError(fmt::format("cannot write checkpoint '{}'", path.string()));
  }

  void bytes(const void* data, std::size_t n) {
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  }
  void u32(std::uint32_t v) { bytes(&v, sizeof v); }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void floats(const double* data, Eigen::Index n) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const float f = static_cast<float>(data[k]);
      bytes(&f, sizeof f);
    }
  }
  void finish() {
    out_.flush();
    if (!out_) throw DataError(fmt::format("failed writing checkpoint '{}'", path_.string()));
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw DataError(fmt::format("cannot read checkpoint '{}'", path.string()));
  }

  void bytes(void* data, std::size_t n) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (in_.gcount() != static_cast<std::streamsize>(n)) {
      throw DataError(fmt::format("checkpoint '{}' is truncated", path_.string()));
    }
  }
  std::uint32_t u32() {
    std::uint32_t v;
    bytes(&v, sizeof v);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v;
    bytes(&v, sizeof v);
    return v;
  }
  void floats(double* data, Eigen::Index n) {
    for (Eigen::Index k = 0; k < n; ++k) {
      float f;
      bytes(&f, sizeof f);
      data[k] = static_cast<double>(f);
    }
  }
  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
};

void write_base(Writer& w, const EmbeddingModel& model) {
  w.bytes(kCheckpointMagic, sizeof kCheckpointMagic);
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(model.kind));
  w.u32(static_cast<std::uint32_t>(model.num_users()));
  w.u32(static_cast<std::uint32_t>(model.num_items()));
  w.u32(static_cast<std::uint32_t>(model.dim()));
  w.u32(static_cast<std::uint32_t>(model.layers));
  w.u64(model.seed);
  w.floats(model.tables.user.data(), model.tables.user.size());
  w.floats(model.tables.item.data(), model.tables.item.size());
}

EmbeddingModel read_base(Reader& r) {
  char magic[sizeof kCheckpointMagic];
  r.bytes(magic, sizeof magic);
  if (std::memcmp(magic, kCheckpointMagic, sizeof magic) != 0) {
    throw DataError(fmt::format("'{}' is not a checkpoint", r.path().string()));
  }
  const std::uint32_t version = r.u32();
  if (version != kCheckpointVersion) {
    throw DataError(fmt::format("checkpoint '{}' has unsupported version {}", r.path().string(),
                                version));
  }
  const std::uint32_t kind = r.u32();
  if (kind > static_cast<std::uint32_t>(BaseKind::kLightGCN)) {
    throw DataError(fmt::format("checkpoint '{}' has unknown model kind {}", r.path().string(),
                                kind));
  }
  EmbeddingModel model;
  model.kind = static_cast<BaseKind>(kind);
  const auto m = static_cast<Eigen::Index>(r.u32());
  const auto n = static_cast<Eigen::Index>(r.u32());
  const auto d = static_cast<Eigen::Index>(r.u32());
  model.layers = static_cast<int>(r.u32());
  model.seed = r.u64();
  model.tables.user.resize(m, d);
  model.tables.item.resize(n, d);
  r.floats(model.tables.user.data(), model.tables.user.size());
  r.floats(model.tables.item.data(), model.tables.item.size());
  return model;
}

void expect_tag(Reader& r, const char (&tag)[4]) {
  char got[4];
  r.bytes(got, sizeof got);
  if (std::memcmp(got, tag, sizeof got) != 0) {
    throw DataError(fmt::format("checkpoint '{}' has a malformed section", r.path().string()));
  }
}

template <typename T>
void round_block(T& x) {
  x = x.unaryExpr([](double v) { return static_cast<double>(static_cast<float>(v)); });
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const EmbeddingModel& model) {
  Writer w(path);
  write_base(w, model);
  w.finish();
}

EmbeddingModel load_checkpoint(const std::filesystem::path& path) {
  Reader r(path);
  return read_base(r);
}

void save_cdcgcn_checkpoint(const std::filesystem::path& path, const CdcgcnModel& model) {
  const auto& disc = model.disc;
  if (disc.input_dim() != model.base.dim()) {
    throw UsageError("discriminator input size does not match the embedding size");
  }
  Writer w(path);
  write_base(w, model.base);
  w.bytes(kDiscTag, sizeof kDiscTag);
  w.u32(static_cast<std::uint32_t>(disc.global_dim()));
  w.u32(static_cast<std::uint32_t>(disc.hidden()));
  w.u32(static_cast<std::uint32_t>(disc.num_communities()));
  w.floats(disc.w1.data(), disc.w1.size());
  w.floats(disc.b1.data(), disc.b1.size());
  w.floats(disc.w2.data(), disc.w2.size());
  w.floats(disc.b2.data(), disc.b2.size());
  w.floats(disc.global_user.data(), disc.global_user.size());
  w.floats(disc.global_item.data(), disc.global_item.size());
  w.bytes(kEtaTag, sizeof kEtaTag);
  w.u32(static_cast<std::uint32_t>(model.eta.size()));
  w.bytes(model.eta.data(), model.eta.size() * sizeof(double));
  w.finish();
}

CdcgcnModel load_cdcgcn_checkpoint(const std::filesystem::path& path) {
  Reader r(path);
  CdcgcnModel model;
  model.base = read_base(r);
  if (r.at_end()) {
    throw DataError(fmt::format("checkpoint '{}' has no discriminator section", path.string()));
  }
  expect_tag(r, kDiscTag);
  const int g = static_cast<int>(r.u32());
  const int h = static_cast<int>(r.u32());
  const int c = static_cast<int>(r.u32());
  auto& disc = model.disc;
  disc = Discriminator::zeros(model.base.dim(), g, h, c);
  r.floats(disc.w1.data(), disc.w1.size());
  r.floats(disc.b1.data(), disc.b1.size());
  r.floats(disc.w2.data(), disc.w2.size());
  r.floats(disc.b2.data(), disc.b2.size());
  r.floats(disc.global_user.data(), disc.global_user.size());
  r.floats(disc.global_item.data(), disc.global_item.size());
  expect_tag(r, kEtaTag);
  model.eta.resize(r.u32());
  if (model.eta.size() != static_cast<std::size_t>(model.base.num_users())) {
    throw DataError(fmt::format("checkpoint '{}' has {} fusion weights for {} users",
                                path.string(), model.eta.size(), model.base.num_users()));
  }
  r.bytes(model.eta.data(), model.eta.size() * sizeof(double));
  return model;
}

void round_to_float(Discriminator& disc) {
  round_block(disc.w1);
  round_block(disc.b1);
  round_block(disc.w2);
  round_block(disc.b2);
  round_block(disc.global_user);
  round_block(disc.global_item);
}

}  // namespace cdcgcn
