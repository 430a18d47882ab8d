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

#include "flsched/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "flsched/rng.hpp"

namespace flsched {

void ChannelConfig::validate() const {
  if (num_clients < 1) throw std::invalid_argument("channel: num_clients must be >= 1");
  if (num_rbs < 1) throw std::invalid_argument("channel: num_rbs must be >= 1");
  if (tx_power <= 0.0) throw std::invalid_argument("channel: tx_power must be > 0");
  if (noise_power <= 0.0) throw std::invalid_argument("channel: noise_power must be > 0");
  if (target_sinr <= 0.0) throw std::invalid_argument("channel: target_sinr must be > 0");
  if (correlation < 0.0 || correlation >= 1.0)
    throw std::invalid_argument("channel: correlation must be in [0, 1)");
  if (mean_gain < 0.0) throw std::invalid_argument("channel: mean_gain must be >= 0");
  if (periodic_amplitude < 0.0 || periodic_amplitude > 1.0)
    throw std::invalid_argument("channel: periodic_amplitude must be in [0, 1]");
  if (periodic_period <= 0.0) throw std::invalid_argument("channel: periodic_period must be > 0");
}

double calibrated_mean_gain(double tx_power, double noise_power, double target_sinr) {
  return target_sinr * noise_power / tx_power;
}

namespace {

double periodic_power(long slot, const ChannelConfig& cfg) {
  const double phase = 2.0 * std::numbers::pi * static_cast<double>(slot) / cfg.periodic_period;
  return cfg.mean_gain * (1.0 + cfg.periodic_amplitude * std::sin(phase));
}

}  // namespace

ChannelState make_channel(const ChannelConfig& cfg, std::mt19937_64& rng) {
  cfg.validate();
  ChannelState state;
  state.gains.resize(cfg.num_clients, cfg.num_rbs);
  state.interference = Matrix::Zero(cfg.num_clients, cfg.num_rbs);
  state.slot = 0;
  if (cfg.fading == FadingModel::periodic) {
    state.gains.setConstant(Complex(std::sqrt(periodic_power(0, cfg)), 0.0));
  } else {
    for (Eigen::Index k = 0; k < state.gains.rows(); ++k)
      for (Eigen::Index b = 0; b < state.gains.cols(); ++b)
        state.gains(k, b) = complex_gaussian(rng, cfg.mean_gain);
  }
  return state;
}

ChannelState step_channel(ChannelState state, const ChannelConfig& cfg, std::mt19937_64& rng) {
  cfg.validate();
  const long next = state.slot + 1;
  if (cfg.fading == FadingModel::periodic) {
    state.gains.setConstant(Complex(std::sqrt(periodic_power(next, cfg)), 0.0));
  } else {
    const double keep = cfg.correlation;
    const double refresh = std::sqrt(1.0 - keep * keep);
    for (Eigen::Index k = 0; k < state.gains.rows(); ++k)
      for (Eigen::Index b = 0; b < state.gains.cols(); ++b)
        state.gains(k, b) =
            keep * state.gains(k, b) + refresh * complex_gaussian(rng, cfg.mean_gain);
  }
  state.slot = next;
  return state;
}

double sinr(Complex gain, double interference, const ChannelConfig& cfg) {
  return cfg.tx_power * std::norm(gain) / (interference + cfg.noise_power);
}

bool feasible(Complex predicted_gain, const ChannelConfig& cfg) {
  return sinr(predicted_gain, 0.0, cfg) >= cfg.target_sinr;
}

double rate(const BoolArray& allocation, const Eigen::Ref<const Eigen::RowVectorXcd>& gains,
            const Eigen::Ref<const Eigen::RowVectorXd>& interference, const ChannelConfig& cfg) {
  if (allocation.size() != gains.size() || allocation.size() != interference.size())
    throw std::invalid_argument("rate: allocation/gain/interference size mismatch");
  if (allocation.count() > 1)
    throw std::invalid_argument("rate: a client holds at most one RB per slot");
  double sum = 0.0;
  for (Eigen::Index b = 0; b < allocation.size(); ++b)
    if (allocation[b]) sum += std::log2(1.0 + sinr(gains[b], interference[b], cfg));
  return sum;
}

double rate(const BoolArray& allocation, const Eigen::Ref<const Eigen::RowVectorXcd>& gains,
            const ChannelConfig& cfg) {
  const Eigen::RowVectorXd zero = Eigen::RowVectorXd::Zero(gains.size());
  return rate(allocation, gains, zero, cfg);
}

}  // namespace flsched
