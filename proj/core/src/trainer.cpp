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

#include "cdcgcn/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <fmt/core.h>

#include "cdcgcn/fusion.hpp"
#include "cdcgcn/metrics.hpp"
#include "cdcgcn/ranking.hpp"

namespace cdcgcn {

std::uint64_t epoch_stream_seed(std::uint64_t seed) { return derive_seed(seed, 0x45504F43); }

std::vector<std::vector<Triplet>> sample_epoch(std::span<const Interaction> train,
                                               const NegativeSampler& sampler, double alpha,
                                               int batch_size, std::mt19937_64& rng) {
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<Triplet>> batches;
  const auto size = static_cast<std::size_t>(batch_size);
  for (std::size_t start = 0; start < order.size(); start += size) {
    auto& batch = batches.emplace_back();
    const std::size_t stop = std::min(order.size(), start + size);
    batch.reserve(stop - start);
    for (std::size_t t = start; t < stop; ++t) {
      const auto& edge = train[order[t]];
      batch.push_back({edge.user, edge.item, sampler.sample(edge.user, alpha, rng)});
    }
  }
  return batches;
}

BprTrainer::BprTrainer(const InteractionDataset& dataset, const CommunityAssignment* communities,
                       const TrainingConfig& config, ObjectiveFactory objective)
    : dataset_(&dataset),
      config_(config),
      sampler_(dataset.graph, communities),
      objective_(std::move(objective)),
      model_(EmbeddingModel::initialize(config.kind, dataset.num_users, dataset.num_items,
                                        config.dim, config.layers, config.seed)),
      adam_(AdamConfig{.learning_rate = config.learning_rate}) {
  config_.validate();
}

EpochStats BprTrainer::train_epoch(std::mt19937_64& rng) {
  const auto batches = sample_epoch(dataset_->train, sampler_, 0.0, config_.batch_size, rng);
  EpochStats stats;
  for (const auto& batch : batches) {
    const PairwiseObjective objective = objective_ ? objective_(batch, weights_) : PairwiseObjective{};
    const BprLoss loss = bpr_step(model_, adam_, dataset_->graph, batch, config_, objective);
    stats.rec_loss += loss.ranking;
  }
  stats.batches = batches.size();
  if (stats.batches > 0) stats.rec_loss /= static_cast<double>(stats.batches);
  return stats;
}

CdcgcnTrainer::CdcgcnTrainer(const InteractionDataset& dataset,
                             const CommunityAssignment& communities, const TrainingConfig& config,
                             const CdcgcnOptions& options)
    : dataset_(&dataset),
      communities_(&communities),
      config_(config),
      options_(options),
      sampler_(dataset.graph, &communities),
      model_(EmbeddingModel::initialize(config.kind, dataset.num_users, dataset.num_items,
                                        config.dim, config.layers, config.seed)),
      adam_base_(AdamConfig{.learning_rate = config.learning_rate}),
      adam_disc_(AdamConfig{.learning_rate = config.learning_rate}) {
  config_.validate();
  if (options.cgcn_layers < 0) throw UsageError("cgcn_layers must be non-negative");
  if (options.hidden <= 0 || options.global_dim < 0) {
    throw UsageError("discriminator sizes must be positive");
  }
  coef_ = cdcgcn::cgcn_coefficients(dataset.graph, compatibility(dataset.graph, communities));
  disc_ = Discriminator::initialize(config.dim, options.global_dim, options.hidden,
                                    communities.num_communities,
                                    config.seed);
}

ObjectiveSpec CdcgcnTrainer::objective_spec() const {
  ObjectiveSpec spec;
  spec.beta = config_.beta;
  spec.l2_base = config_.l2_base;
  spec.l2_disc = config_.l2_disc;
  spec.cgcn_layers = options_.cgcn_layers;
  spec.comm_mean = options_.comm_mean;
  return spec;
}

ObjectiveValue CdcgcnTrainer::train_step(std::span<const Triplet> batch) {
  ModelGradients grads;
  const ObjectiveValue value =
      evaluate_objective(model_, options_.use_discriminator ? &disc_ : nullptr, dataset_->graph,
                         coef_, *communities_, batch, objective_spec(), &grads);
  const double total = value.rec + value.reg_base + value.adv + value.reg_disc;
  if (!std::isfinite(total)) {
    throw NumericError(fmt::format(
        "non-finite CD-CGCN loss (rec {}, adv {}; user norm {:.6g}, item norm {:.6g}, "
        "discriminator norm {:.6g})",
        value.rec, value.adv, model_.tables.user.norm(), model_.tables.item.norm(),
        std::sqrt(disc_.squared_norm())));
  }
  adam_base_.begin_step();
  adam_base_.update(0, model_.tables.user, grads.base_raw.user);
  adam_base_.update(1, model_.tables.item, grads.base_raw.item);
  if (options_.use_discriminator) {
    adam_disc_.begin_step();
    adam_disc_.update(0, disc_.w1, grads.disc.w1);
    adam_disc_.update(1, disc_.b1, grads.disc.b1);
    adam_disc_.update(2, disc_.w2, grads.disc.w2);
    adam_disc_.update(3, disc_.b2, grads.disc.b2);
    adam_disc_.update(4, disc_.global_user, grads.disc.global_user);
    adam_disc_.update(5, disc_.global_item, grads.disc.global_item);
  }
  check_finite(model_, "cdcgcn train_step");
  return value;
}

EpochStats CdcgcnTrainer::train_epoch(std::mt19937_64& rng) {
  const auto batches =
      sample_epoch(dataset_->train, sampler_, config_.alpha, config_.batch_size, rng);
  EpochStats stats;
  std::size_t correct = 0, total = 0;
  for (const auto& batch : batches) {
    const ObjectiveValue value = train_step(batch);
    stats.rec_loss += value.rec;
    stats.adv_loss += value.adv;
    correct += value.correct;
    total += value.total;
  }
  stats.batches = batches.size();
  if (stats.batches > 0) {
    stats.rec_loss /= static_cast<double>(stats.batches);
    stats.adv_loss /= static_cast<double>(stats.batches);
  }
  stats.disc_accuracy = total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
  return stats;
}

FitResult fit(int epochs, int eval_every, int patience,
              const std::function<EpochStats(int)>& run_epoch,
              const std::function<ValidationPoint()>& validate,
              const std::function<void()>& on_improve) {
  FitResult result;
  int stale = 0;
  for (int epoch = 1; epoch <= epochs; ++epoch) {
    TrainingLogRow row;
    row.epoch = epoch;
    row.stats = run_epoch(epoch);
    if (epoch % eval_every == 0 || epoch == epochs) {
      row.validation = validate();
      if (row.validation->recall20 > result.best_recall) {
        result.best_recall = row.validation->recall20;
        result.best_epoch = epoch;
        stale = 0;
        on_improve();
      } else {
        ++stale;
      }
    }
    result.log.push_back(row);
    if (stale >= patience) {
      result.early_stopped = true;
      break;
    }
  }
  return result;
}

void write_training_log(const std::filesystem::path& path, std::span<const TrainingLogRow> rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << "epoch\tl_rec\tl_adv\tdisc_acc\tval_recall20\tval_ilfbi20\n";
  for (const auto& row : rows) {
    out << fmt::format("{}\t{:.9g}\t{:.9g}\t{:.6f}", row.epoch, row.stats.rec_loss,
                       row.stats.adv_loss, row.stats.disc_accuracy);
    if (row.validation) {
      out << fmt::format("\t{:.6f}\t{:.6f}\n", row.validation->recall20, row.validation->ilfbi20);
    } else {
      out << "\t\t\n";
    }
  }
}

ValidationPoint validate(const Scorer& scorer, const InteractionDataset& dataset,
                         const CommunityAssignment* communities) {
  constexpr int k = 20;
  const auto lists = rank_topk(scorer, dataset.graph, k);
  const auto val_by_user = InteractionDataset::group_by_user(dataset.val, dataset.num_users);
  ValidationPoint point;
  point.recall20 = precision_recall_ndcg(lists, val_by_user, k).recall;
  if (communities) point.ilfbi20 = ilfbi_at_k(lists, *communities, k);
  return point;
}

PretrainResult pretrain(const InteractionDataset& dataset, const CommunityAssignment* communities,
                        const TrainingConfig& config, ObjectiveFactory objective) {
  BprTrainer trainer(dataset, communities, config, std::move(objective));
  std::mt19937_64 rng(epoch_stream_seed(config.seed));
  PretrainResult result{trainer.model(), {}};
  result.fit = fit(
      config.epochs, config.eval_every, config.patience,
      [&](int) { return trainer.train_epoch(rng); },
      [&] { return validate(EmbeddingScorer(trainer.model(), dataset.graph), dataset, communities); },
      [&] { result.model = trainer.model(); });
  return result;
}

CdcgcnResult train_cdcgcn(const InteractionDataset& dataset, const CommunityAssignment& communities,
                          const EmbeddingModel* pretrained, const TrainingConfig& config,
                          const CdcgcnOptions& options) {
  CdcgcnTrainer trainer(dataset, communities, config, options);
  std::vector<double> eta(static_cast<std::size_t>(dataset.num_users), 1.0);
  std::optional<EmbeddingScorer> frozen;
  if (options.adaptive_inference) {
    if (!pretrained) throw UsageError("adaptive inference needs a pretrained base model");
    if (pretrained->num_users() != dataset.num_users ||
        pretrained->num_items() != dataset.num_items) {
      throw DataError("pretrained model does not match the dataset's index space");
    }
    eta = compute_eta(ilfbi_init(dataset.graph, communities));
    frozen.emplace(*pretrained, dataset.graph);
  }
  std::mt19937_64 rng(epoch_stream_seed(config.seed));
  CdcgcnResult result{{trainer.model(), trainer.discriminator(), eta}, {}};
  const auto validate_now = [&] {
    const EmbeddingScorer cd(trainer.model(), dataset.graph);
    if (frozen) return validate(FusedScorer(cd, *frozen, eta), dataset, &communities);
    return validate(cd, dataset, &communities);
  };
  result.fit = fit(
      config.epochs, config.eval_every, config.patience,
      [&](int) { return trainer.train_epoch(rng); }, validate_now,
      [&] {
        result.model.base = trainer.model();
        result.model.disc = trainer.discriminator();
      });
  return result;
}

}  // namespace cdcgcn
