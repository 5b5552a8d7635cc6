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

#include "cdcgcn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace cdcgcn {

void AdamState::update_raw(std::size_t slot, double* param, const double* grad, std::size_t n) {
  if (step_ == 0) throw std::logic_error("AdamState::update called before begin_step");
  if (slot >= first_.size()) {
    first_.resize(slot + 1);
    second_.resize(slot + 1);
  }
  auto& m = first_[slot];
  auto& v = second_[slot];
  if (m.size() == 0) {
    m.setZero(static_cast<Eigen::Index>(n));
    v.setZero(static_cast<Eigen::Index>(n));
  } else if (static_cast<std::size_t>(m.size()) != n) {
    throw std::logic_error("AdamState slot size changed between steps");
  }
  const double b1 = config_.beta1;
  const double b2 = config_.beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(step_));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(step_));
  const double step_size = config_.learning_rate / correction1;
  const double sqrt_c2 = std::sqrt(correction2);
  for (std::size_t k = 0; k < n; ++k) {
    m[k] = b1 * m[k] + (1.0 - b1) * grad[k];
    v[k] = b2 * v[k] + (1.0 - b2) * grad[k] * grad[k];
    param[k] -= step_size * m[k] / (std::sqrt(v[k]) / sqrt_c2 + config_.epsilon);
  }
}

}  // namespace cdcgcn
