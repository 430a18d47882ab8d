/*
 * Copyright 2026 The flsched Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "flsched/gpr.hpp"

#include <stdexcept>

#include <Eigen/Cholesky>

namespace flsched {

void GprHyperParams::validate() const {
  if (length_scale <= 0.0) throw std::invalid_argument("gpr: length_scale must be > 0");
  if (period <= 0.0) throw std::invalid_argument("gpr: period must be > 0");
  if (jitter < 0.0) throw std::invalid_argument("gpr: jitter must be >= 0");
  if (window_capacity < 1) throw std::invalid_argument("gpr: window_capacity must be >= 1");
}

GprWindow::GprWindow(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("gpr: window capacity must be >= 1");
  samples_.reserve(static_cast<std::size_t>(capacity));
}

void GprWindow::record(long slot, Complex value) {
  if (!samples_.empty() && slot <= samples_.back().slot)
    throw std::invalid_argument("gpr: sample slots must be strictly increasing");
  samples_.push_back({slot, value});
  if (static_cast<int>(samples_.size()) > capacity_) samples_.erase(samples_.begin());
}

GprPosterior posterior(const GprWindow& window, double query_slot, const GprHyperParams& hp) {
  hp.validate();
  if (window.empty()) return {};

  const auto& samples = window.samples();
  const int n = window.size();
  Matrix cov(n, n);
  Vector cross(n);
  for (int i = 0; i < n; ++i) {
    const double ti = static_cast<double>(samples[i].slot);
    cross[i] = kernel(query_slot, ti, hp);
    for (int j = 0; j <= i; ++j) {
      const double v = kernel(ti, static_cast<double>(samples[j].slot), hp);
      cov(i, j) = v;
      cov(j, i) = v;
    }
  }
  cov.diagonal().array() += hp.jitter;

  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("gpr: regularized kernel matrix is not positive definite");
  const Vector weights = llt.solve(cross);

  Complex mean(0.0, 0.0);
  for (int i = 0; i < n; ++i) mean += weights[i] * samples[i].value;

  GprPosterior out;
  out.predicted_gain = mean;
  // kernel(query, query) == 1; tiny negative round-off is clamped away.
  out.information = std::max(0.0, 1.0 - cross.dot(weights));
  return out;
}

GprBank::GprBank(int num_clients, int num_rbs, int window_capacity)
    : num_clients_(num_clients), num_rbs_(num_rbs) {
  if (num_clients < 1 || num_rbs < 1)
    throw std::invalid_argument("gpr: bank dimensions must be positive");
  windows_.assign(static_cast<std::size_t>(num_clients) * num_rbs, GprWindow(window_capacity));
}

GprWindow& GprBank::window(int client, int rb) {
  return windows_.at(static_cast<std::size_t>(client) * num_rbs_ + rb);
}

const GprWindow& GprBank::window(int client, int rb) const {
  return windows_.at(static_cast<std::size_t>(client) * num_rbs_ + rb);
}

void GprBank::record(int client, int rb, long slot, Complex value) {
  window(client, rb).record(slot, value);
}

GprGrid posterior_grid(const GprBank& bank, double query_slot, const GprHyperParams& hp) {
  GprGrid grid;
  grid.predicted.resize(bank.num_clients(), bank.num_rbs());
  grid.information.resize(bank.num_clients(), bank.num_rbs());
  for (int k = 0; k < bank.num_clients(); ++k) {
    for (int b = 0; b < bank.num_rbs(); ++b) {
      const GprPosterior p = posterior(bank.window(k, b), query_slot, hp);
      grid.predicted(k, b) = p.predicted_gain;
      grid.information(k, b) = p.information;
    }
  }
  return grid;
}

Matrix information_matrix(const GprBank& bank, double query_slot, const GprHyperParams& hp,
                          CsiMode mode) {
  if (mode == CsiMode::perfect) return Matrix::Zero(bank.num_clients(), bank.num_rbs());
  return posterior_grid(bank, query_slot, hp).information;
}

}  // namespace flsched
