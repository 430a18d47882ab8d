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

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "flsched/types.hpp"

namespace flsched {

/// Whether the scheduler sees the true gains or has to predict them from
/// past channel samples.
enum class CsiMode { perfect, gpr };

struct GprHyperParams {
  double length_scale = 2.0;  // kernel length
  double period = 5.0;        // kernel period, slots
  double jitter = 1e-6;       // diagonal regularizer on the kernel matrix
  int window_capacity = 20;   // samples retained per (client, RB) pair

  void validate() const;
};

/// Periodic squared-exponential kernel, exp(-sin^2(pi*(a-b)/period)/length).
/// Symmetric, equals 1 at zero lag and at exact multiples of the period.
template <typename Scalar>
Scalar periodic_kernel(Scalar a, Scalar b, Scalar length_scale, Scalar period) {
  const Scalar s = std::sin(std::numbers::pi_v<Scalar> * (a - b) / period);
  return std::exp(-s * s / length_scale);
}

inline double kernel(double a, double b, const GprHyperParams& hp) {
  return periodic_kernel(a, b, hp.length_scale, hp.period);
}

struct GprSample {
  long slot = 0;
  Complex value;
};

/// Sliding window of channel observations for one (client, RB) pair.
/// Slots are strictly increasing; the oldest sample is evicted when the
/// capacity is exceeded.
class GprWindow {
 public:
  GprWindow() = default;
  explicit GprWindow(int capacity);

  /// Appends an observation. Throws std::invalid_argument when the slot is
  /// not newer than the last stored one.
  void record(long slot, Complex value);

  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(samples_.size()); }
  bool empty() const { return samples_.empty(); }
  const std::vector<GprSample>& samples() const { return samples_; }

 private:
  int capacity_ = 20;
  std::vector<GprSample> samples_;
};

struct GprPosterior {
  Complex predicted_gain{0.0, 0.0};
  double information = 1.0;  // posterior variance; 1 is the prior
};

/// Posterior mean and variance at query_slot. The same real kernel weights
/// are applied to the real and imaginary observation parts. Throws
/// std::runtime_error when the regularized kernel matrix is not positive
/// definite (cannot happen with jitter > 0 and exact arithmetic).
GprPosterior posterior(const GprWindow& window, double query_slot, const GprHyperParams& hp);

/// One observation window per (client, RB) pair.
class GprBank {
 public:
  GprBank() = default;
  GprBank(int num_clients, int num_rbs, int window_capacity);

  int num_clients() const { return num_clients_; }
  int num_rbs() const { return num_rbs_; }
  GprWindow& window(int client, int rb);
  const GprWindow& window(int client, int rb) const;
  void record(int client, int rb, long slot, Complex value);

 private:
  int num_clients_ = 0;
  int num_rbs_ = 0;
  std::vector<GprWindow> windows_;
};

struct GprGrid {
  ComplexMatrix predicted;  // num_clients x num_rbs posterior means
  Matrix information;       // num_clients x num_rbs posterior variances
};

/// Evaluates all windows at one query slot.
GprGrid posterior_grid(const GprBank& bank, double query_slot, const GprHyperParams& hp);

/// Per-pair channel information available by sampling at query_slot.
/// Under perfect CSI there is nothing left to learn and the matrix is zero.
Matrix information_matrix(const GprBank& bank, double query_slot, const GprHyperParams& hp,
                          CsiMode mode);

}  // namespace flsched
