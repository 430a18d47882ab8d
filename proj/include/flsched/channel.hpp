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

#include <random>

#include "flsched/types.hpp"

namespace flsched {

/// Temporal structure of the per-(client, RB) fading process.
enum class FadingModel {
  /// First-order Gauss-Markov recursion on the complex gain. The stationary
  /// magnitude distribution is Rayleigh with E[|h|^2] = mean_gain.
  gauss_markov,
  /// Deterministic power trajectory |h(t)|^2 = mean_gain*(1 + a*sin(2*pi*t/p)),
  /// useful as a noise-free target for the channel predictor.
  periodic,
};

struct ChannelConfig {
  int num_clients = 10;
  int num_rbs = 6;
  double tx_power = 1.0;     // uplink transmit power, watts
  double noise_power = 1.0;  // noise power spectral density, watts
  double target_sinr = 1.2;  // minimum SINR for a successful transmission
  double correlation = 0.9;  // per-slot Gauss-Markov coefficient, in [0, 1)
  double mean_gain = 1.2;    // E[|h|^2]
  FadingModel fading = FadingModel::gauss_markov;
  double periodic_amplitude = 0.5;
  double periodic_period = 5.0;

  /// Throws std::invalid_argument on an out-of-range field.
  void validate() const;
};

/// Mean gain making the mean received SNR equal the target SINR:
/// tx_power * E[|h|^2] / noise_power == target_sinr.
double calibrated_mean_gain(double tx_power, double noise_power, double target_sinr);

struct ChannelState {
  ComplexMatrix gains;   // num_clients x num_rbs
  Matrix interference;   // num_clients x num_rbs, all zero under orthogonal access
  long slot = 0;
};

/// Stationary draw at slot 0.
ChannelState make_channel(const ChannelConfig& cfg, std::mt19937_64& rng);

/// Advances the fading process by one slot. Gains are visited row-major so a
/// fixed seed yields a fixed trajectory.
ChannelState step_channel(ChannelState state, const ChannelConfig& cfg, std::mt19937_64& rng);

/// tx_power * |gain|^2 / (interference + noise_power).
double sinr(Complex gain, double interference, const ChannelConfig& cfg);

/// True when the interference-free SINR of the (predicted) gain clears the
/// target; the boundary counts as feasible.
bool feasible(Complex predicted_gain, const ChannelConfig& cfg);

/// Achievable uplink rate of one client over its allocated RB in bits/s/Hz.
/// Rejects allocation vectors with more than one active RB.
double rate(const BoolArray& allocation, const Eigen::Ref<const Eigen::RowVectorXcd>& gains,
            const Eigen::Ref<const Eigen::RowVectorXd>& interference, const ChannelConfig& cfg);
double rate(const BoolArray& allocation, const Eigen::Ref<const Eigen::RowVectorXcd>& gains,
            const ChannelConfig& cfg);

}  // namespace flsched
