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

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace cdcgcn {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Dense Adam with one moment pair per registered parameter slot.
class AdamState {
 public:
  explicit AdamState(AdamConfig config = {}) : config_(config) {}

  // Advances the shared step counter; call once per optimization step.
  void begin_step() { ++step_; }

  // Updates `param` in place from `grad`. Slots are allocated on first use
  // and must keep their size afterwards.
  template <typename Derived, typename GradDerived>
  void update(std::size_t slot, Eigen::DenseBase<Derived>& param,
              const Eigen::DenseBase<GradDerived>& grad) {
    update_raw(slot, param.derived().data(), grad.derived().data(),
               static_cast<std::size_t>(param.size()));
  }

  void update_raw(std::size_t slot, double* param, const double* grad, std::size_t n);

  std::int64_t step() const { return step_; }
  const AdamConfig& config() const { return config_; }
  std::size_t num_slots() const { return first_.size(); }
  const Eigen::VectorXd& first_moment(std::size_t slot) const { return first_.at(slot); }
  const Eigen::VectorXd& second_moment(std::size_t slot) const { return second_.at(slot); }

 private:
  AdamConfig config_;
  std::int64_t step_ = 0;
  std::vector<Eigen::VectorXd> first_;
  std::vector<Eigen::VectorXd> second_;
};

}  // namespace cdcgcn
