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

#include "flsched/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "flsched/assignment.hpp"
#include "flsched/rng.hpp"

namespace flsched {

void SchedulerConfig::validate() const {
  if (horizon < 0) throw std::invalid_argument("scheduler: horizon must be >= 0");
  if (tradeoff < 0.0) throw std::invalid_argument("scheduler: tradeoff must be >= 0");
  if (exploration_weight < 0.0)
    throw std::invalid_argument("scheduler: exploration_weight must be >= 0");
  if (info_cap <= 0.0) throw std::invalid_argument("scheduler: info_cap must be > 0");
  if (local_accuracy <= 0.0 || local_accuracy >= 1.0)
    throw std::invalid_argument("scheduler: local_accuracy must lie in (0, 1)");
  if (total_data < 1) throw std::invalid_argument("scheduler: total_data must be >= 1");
  if (shard_sizes.empty()) throw std::invalid_argument("scheduler: shard_sizes must be set");
  if (num_rbs < 0) throw std::invalid_argument("scheduler: num_rbs must be >= 0");
}

AuxTargets aux_targets(const SchedulerState& state, const SchedulerConfig& cfg) {
  cfg.validate();
  AuxTargets aux;
  // Pressure toward raising the utility target: the queue pushes down, the
  // endgame penalty slope D*T*(1 - avg)^(T-1) pushes up. While the queue is
  // below the slope the target sits at its ceiling, else at zero.
  const double slope = cfg.tradeoff * static_cast<double>(cfg.total_data) *
                       static_cast<double>(cfg.horizon) *
                       std::pow(1.0 - state.utility_target_avg,
                                static_cast<double>(cfg.horizon - 1));
  aux.alpha = state.utility_queue - slope;
  aux.utility_target = (aux.alpha <= 0.0) ? 1.0 - cfg.local_accuracy : 0.0;
  aux.info_target =
      (state.info_queue <= cfg.tradeoff * cfg.exploration_weight) ? cfg.info_cap : 0.0;
  return aux;
}

double scheduled_utility(const BoolArray& scheduled, const SchedulerConfig& cfg) {
  if (scheduled.size() != static_cast<Eigen::Index>(cfg.shard_sizes.size()))
    throw std::invalid_argument("scheduler: schedule/shard size mismatch");
  double mass = 0.0;
  for (Eigen::Index k = 0; k < scheduled.size(); ++k)
    if (scheduled[k]) mass += static_cast<double>(cfg.shard_sizes[k]);
  return (1.0 - cfg.local_accuracy) * mass / static_cast<double>(cfg.total_data);
}

double harvested_information(const BoolMatrix& allocation, const Matrix& info) {
  if (allocation.rows() != info.rows() || allocation.cols() != info.cols())
    throw std::invalid_argument("scheduler: allocation/info shape mismatch");
  double sum = 0.0;
  for (Eigen::Index k = 0; k < allocation.rows(); ++k)
    for (Eigen::Index b = 0; b < allocation.cols(); ++b)
      if (allocation(k, b)) sum += info(k, b);
  return sum;
}

SchedulerState queue_update(SchedulerState state, const ScheduleDecision& decision,
                            const Matrix& info, const SchedulerConfig& cfg) {
  const double service = scheduled_utility(decision.scheduled, cfg);
  const double harvested = harvested_information(decision.allocation, info);
  state.utility_queue = std::max(0.0, state.utility_queue + decision.utility_target - service);
  state.info_queue = std::max(0.0, state.info_queue + decision.info_target - harvested);
  const double t = static_cast<double>(state.slot + 1);
  state.utility_target_avg += (decision.utility_target - state.utility_target_avg) / t;
  state.info_target_avg += (decision.info_target - state.info_target_avg) / t;
  state.slot += 1;
  return state;
}

namespace {

ScheduleDecision schedule_by_weights(const Matrix& weights, const BoolMatrix& feasible,
                                     const AuxTargets& aux, const SchedulerState& state,
                                     const SchedulerConfig& cfg) {
  const AssignmentResult<double> match = max_weight_assignment<double>(weights, feasible);
  ScheduleDecision decision;
  const int num_clients = static_cast<int>(weights.rows());
  const int num_rbs = static_cast<int>(weights.cols());
  decision.scheduled = BoolArray::Constant(num_clients, false);
  decision.allocation = BoolMatrix::Constant(num_clients, num_rbs, false);
  for (int k = 0; k < num_clients; ++k) {
    const int rb = match.rb_of_client[k];
    if (rb >= 0) {
      decision.scheduled[k] = true;
      decision.allocation(k, rb) = true;
    }
  }
  decision.utility_target = aux.utility_target;
  decision.info_target = aux.info_target;
  decision.objective_value =
      match.total_weight - aux.alpha * aux.utility_target -
      (state.info_queue - cfg.tradeoff * cfg.exploration_weight) * aux.info_target;
  return decision;
}

}  // namespace

ScheduleDecision dpp_schedule(const SchedulerState& state, const SchedulerConfig& cfg,
                              const BoolMatrix& feasible, const Matrix& info) {
  cfg.validate();
  const int num_clients = static_cast<int>(feasible.rows());
  const AuxTargets aux = aux_targets(state, cfg);
  Matrix weights(num_clients, feasible.cols());
  for (int k = 0; k < num_clients; ++k) {
    const double quantity = state.utility_queue * (1.0 - cfg.local_accuracy) *
                            static_cast<double>(cfg.shard_sizes.at(k)) /
                            static_cast<double>(cfg.total_data);
    for (Eigen::Index b = 0; b < feasible.cols(); ++b)
      weights(k, b) = quantity + state.info_queue * info(k, b);
  }
  return schedule_by_weights(weights, feasible, aux, state, cfg);
}

ScheduleDecision qunaw_schedule(const SchedulerState& state, const SchedulerConfig& cfg,
                                const BoolMatrix& feasible, const Matrix& info) {
  cfg.validate();
  const int num_clients = static_cast<int>(feasible.rows());
  const AuxTargets aux = aux_targets(state, cfg);
  const double quantity = state.utility_queue * (1.0 - cfg.local_accuracy) /
                          static_cast<double>(num_clients);
  Matrix weights(num_clients, feasible.cols());
  for (int k = 0; k < num_clients; ++k)
    for (Eigen::Index b = 0; b < feasible.cols(); ++b)
      weights(k, b) = quantity + state.info_queue * info(k, b);
  return schedule_by_weights(weights, feasible, aux, state, cfg);
}

ScheduleDecision rand_schedule(const SchedulerConfig& cfg, const BoolMatrix& feasible,
                               std::mt19937_64& rng) {
  const int num_clients = static_cast<int>(feasible.rows());
  const int num_rbs = static_cast<int>(feasible.cols());
  ScheduleDecision decision;
  decision.scheduled = BoolArray::Constant(num_clients, false);
  decision.allocation = BoolMatrix::Constant(num_clients, num_rbs, false);

  std::vector<int> order(num_clients);
  std::iota(order.begin(), order.end(), 0);
  shuffle_inplace(order, rng);
  std::vector<bool> rb_taken(num_rbs, false);
  int assigned = 0;
  for (int k : order) {
    if (assigned == num_rbs) break;
    std::vector<int> options;
    for (int b = 0; b < num_rbs; ++b)
      if (!rb_taken[b] && feasible(k, b)) options.push_back(b);
    if (options.empty()) continue;
    const int b = options[bounded_int(rng, options.size())];
    rb_taken[b] = true;
    decision.scheduled[k] = true;
    decision.allocation(k, b) = true;
    ++assigned;
  }
  return decision;
}

ScheduleDecision ideal_schedule(int num_clients, int num_rbs) {
  ScheduleDecision decision;
  decision.scheduled = BoolArray::Constant(num_clients, true);
  decision.allocation = BoolMatrix::Constant(num_clients, num_rbs, false);
  decision.rb_constrained = false;
  return decision;
}

bool satisfies_constraints(const ScheduleDecision& decision, const BoolMatrix& feasible) {
  if (!decision.rb_constrained) return true;
  const Eigen::Index num_clients = decision.allocation.rows();
  const Eigen::Index num_rbs = decision.allocation.cols();
  if (decision.scheduled.size() != num_clients) return false;
  if (feasible.rows() != num_clients || feasible.cols() != num_rbs) return false;

  Eigen::Index total = 0;
  for (Eigen::Index k = 0; k < num_clients; ++k) {
    Eigen::Index held = 0;
    for (Eigen::Index b = 0; b < num_rbs; ++b) {
      if (!decision.allocation(k, b)) continue;
      if (!feasible(k, b)) return false;
      ++held;
    }
    if (held > 1) return false;
    if (decision.scheduled[k] != (held == 1)) return false;
    total += held;
  }
  if (total > num_rbs) return false;
  for (Eigen::Index b = 0; b < num_rbs; ++b) {
    Eigen::Index users = 0;
    for (Eigen::Index k = 0; k < num_clients; ++k)
      if (decision.allocation(k, b)) ++users;
    if (users > 1) return false;
  }
  return true;
}

}  // namespace flsched
