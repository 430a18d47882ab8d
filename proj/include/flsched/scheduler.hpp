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
#include <vector>

#include "flsched/types.hpp"

namespace flsched {

// Drift-plus-penalty scheduler. Two virtual queues turn the time-averaged
// goals (training utility and channel-information harvesting) into per-slot
// pressures; every slot the scheduler picks auxiliary targets in closed form
// and solves an exact max-weight client/RB matching under per-pair
// feasibility.

struct SchedulerConfig {
  long horizon = 100;               // total rounds T
  double tradeoff = 1.0;            // queue-stability vs objective weight
  double exploration_weight = 1.0;  // value of harvested channel information
  double info_cap = 6.0;            // ceiling of the per-slot information target
  double local_accuracy = 0.7;
  long total_data = 600;
  std::vector<int> shard_sizes;
  int num_rbs = 6;

  void validate() const;
};

struct SchedulerState {
  double utility_queue = 0.0;      // backlog of promised training utility
  double info_queue = 0.0;         // backlog of promised channel information
  double utility_target_avg = 0.0; // running mean of chosen utility targets
  double info_target_avg = 0.0;    // running mean of chosen information targets
  long slot = 0;
};

struct AuxTargets {
  double utility_target = 0.0;
  double info_target = 0.0;
  double alpha = 0.0;  // utility-queue pressure minus the endgame penalty slope
};

struct ScheduleDecision {
  BoolArray scheduled;    // num_clients
  BoolMatrix allocation;  // num_clients x num_rbs
  double utility_target = 0.0;
  double info_target = 0.0;
  double objective_value = 0.0;
  // Cleared by the unconstrained baseline, whose schedule deliberately
  // ignores the RB limits; constraint checks skip such decisions.
  bool rb_constrained = true;
};

/// Closed-form maximizers of the per-slot auxiliary terms over
/// [0, 1-local_accuracy] and [0, info_cap]. Boundary pressures keep the
/// nonzero branch.
AuxTargets aux_targets(const SchedulerState& state, const SchedulerConfig& cfg);

/// Training utility of a schedule: (1-beta) * sum_k (D_k/D) * s_k.
double scheduled_utility(const BoolArray& scheduled, const SchedulerConfig& cfg);

/// Channel information collected by the allocated pairs.
double harvested_information(const BoolMatrix& allocation, const Matrix& info);

/// Queue recursion q <- max(0, q + target - service) for both queues, plus
/// the running target averages; advances the slot.
SchedulerState queue_update(SchedulerState state, const ScheduleDecision& decision,
                            const Matrix& info, const SchedulerConfig& cfg);

/// Data-quantity-aware max-weight decision: edge weight
/// utility_queue*(1-beta)*D_k/D + info_queue*info(k,b) on feasible pairs.
ScheduleDecision dpp_schedule(const SchedulerState& state, const SchedulerConfig& cfg,
                              const BoolMatrix& feasible, const Matrix& info);

/// Quantity-unaware variant: D_k/D replaced by 1/K in the edge weights.
ScheduleDecision qunaw_schedule(const SchedulerState& state, const SchedulerConfig& cfg,
                                const BoolMatrix& feasible, const Matrix& info);

/// Uniformly random maximal feasible assignment: clients are shuffled and
/// each in turn takes a uniformly random free feasible RB.
ScheduleDecision rand_schedule(const SchedulerConfig& cfg, const BoolMatrix& feasible,
                               std::mt19937_64& rng);

/// Every client scheduled, no RBs consumed; the RB constraint checks are
/// flagged off for this baseline.
ScheduleDecision ideal_schedule(int num_clients, int num_rbs);

/// Validates an RB-constrained decision: one RB per scheduled client, no RB
/// shared, at most num_rbs clients, allocations only on feasible pairs, and
/// scheduled exactly when holding an RB.
bool satisfies_constraints(const ScheduleDecision& decision, const BoolMatrix& feasible);

}  // namespace flsched
