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
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "cdcgcn/objective.hpp"
#include "cdcgcn/sampler.hpp"

namespace cdcgcn {

class Scorer;

struct EpochStats {
  double rec_loss = 0.0;  // mean per batch
  double adv_loss = 0.0;  // mean per batch
  double disc_accuracy = 0.0;
  std::size_t batches = 0;
};

// Shuffles all train edges and pairs each with a sampled negative.
std::vector<std::vector<Triplet>> sample_epoch(std::span<const Interaction> train,
                                               const NegativeSampler& sampler, double alpha,
                                               int batch_size, std::mt19937_64& rng);

// Builds the per-batch objective; `weights` is scratch storage that the
// returned objective may reference.
using ObjectiveFactory =
    std::function<PairwiseObjective(std::span<const Triplet>, std::vector<double>& weights)>;

// Seed of the epoch sampling stream shared by every trainer.
std::uint64_t epoch_stream_seed(std::uint64_t seed);

// Plain BPR training plus the fairness / IPS variants through `objective`.
class BprTrainer {
 public:
  BprTrainer(const InteractionDataset& dataset, const CommunityAssignment* communities,
             const TrainingConfig& config, ObjectiveFactory objective = {});

  EpochStats train_epoch(std::mt19937_64& rng);

  EmbeddingModel& model() { return model_; }
  const EmbeddingModel& model() const { return model_; }

 private:
  const InteractionDataset* dataset_;
  TrainingConfig config_;
  NegativeSampler sampler_;
  ObjectiveFactory objective_;
  EmbeddingModel model_;
  AdamState adam_;
  std::vector<double> weights_;
};

struct CdcgcnOptions {
  int cgcn_layers = 2;  // 0 disables CGCN (e_comm = e_base)
  bool comm_mean = false;
  bool use_discriminator = true;
  bool adaptive_inference = true;  // fuse with the pretrained base model
  int hidden = 64;
  int global_dim = 16;
};

struct CdcgcnModel {
  EmbeddingModel base;
  Discriminator disc;
  std::vector<double> eta;  // fusion weight per user
};

class CdcgcnTrainer {
 public:
  CdcgcnTrainer(const InteractionDataset& dataset, const CommunityAssignment& communities,
                const TrainingConfig& config, const CdcgcnOptions& options);

  EpochStats train_epoch(std::mt19937_64& rng);

  // One joint Adam step on theta_b and theta_d through the gradient reversal layer.
  ObjectiveValue train_step(std::span<const Triplet> batch);

  ObjectiveSpec objective_spec() const;
  const EdgeCoefficients& cgcn_coefficients() const { return coef_; }

  EmbeddingModel& model() { return model_; }
  const EmbeddingModel& model() const { return model_; }
  Discriminator& discriminator() { return disc_; }
  const Discriminator& discriminator() const { return disc_; }

 private:
  const InteractionDataset* dataset_;
  const CommunityAssignment* communities_;
  TrainingConfig config_;
  CdcgcnOptions options_;
  NegativeSampler sampler_;
  EdgeCoefficients coef_;
  EmbeddingModel model_;
  Discriminator disc_;
  AdamState adam_base_;
  AdamState adam_disc_;
};

struct ValidationPoint {
  double recall20 = 0.0;
  double ilfbi20 = 0.0;
};

struct TrainingLogRow {
  int epoch = 0;
  EpochStats stats;
  std::optional<ValidationPoint> validation;
};

struct FitResult {
  std::vector<TrainingLogRow> log;
  int best_epoch = 0;
  double best_recall = -1.0;
  bool early_stopped = false;
};

// Runs epochs, validating every `eval_every`; `on_improve` fires when
// validation Recall@20 reaches a new best. Stops after `patience`
// evaluations without improvement.
FitResult fit(int epochs, int eval_every, int patience,
              const std::function<EpochStats(int)>& run_epoch,
              const std::function<ValidationPoint()>& validate,
              const std::function<void()>& on_improve);

// Header: epoch l_rec l_adv disc_acc val_recall20 val_ilfbi20
void write_training_log(const std::filesystem::path& path, std::span<const TrainingLogRow> rows);

// Recall@20 / ILFBI@20 of `scorer` on the validation split.
ValidationPoint validate(const Scorer& scorer, const InteractionDataset& dataset,
                         const CommunityAssignment* communities);

struct PretrainResult {
  EmbeddingModel model;
  FitResult fit;
};

PretrainResult pretrain(const InteractionDataset& dataset, const CommunityAssignment* communities,
                        const TrainingConfig& config, ObjectiveFactory objective = {});

struct CdcgcnResult {
  CdcgcnModel model;
  FitResult fit;
};

// Trains from fresh theta_b; `pretrained` feeds fused validation scoring
// when options.adaptive_inference is set.
CdcgcnResult train_cdcgcn(const InteractionDataset& dataset, const CommunityAssignment& communities,
                          const EmbeddingModel* pretrained, const TrainingConfig& config,
                          const CdcgcnOptions& options);

}  // namespace cdcgcn
