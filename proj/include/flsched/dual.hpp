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

#include "flsched/dataset.hpp"
#include "flsched/losses.hpp"
#include "flsched/types.hpp"

namespace flsched {

// Dual-decomposed empirical risk minimization. The server state couples a
// dual coordinate per sample with the shared vector
//   shared = features * dual_coords / (regularization * num_samples)
// and the primal model, which for the Tikhonov regularizer equals `shared`.
// Clients ascend their own dual coordinates against a frozen snapshot of the
// shared vector; the server averages the returned updates over the client
// count, which preserves the shared/dual consistency relation on every
// round, including partially scheduled ones.
struct DualState {
  Vector dual_coords;  // one per sample
  Vector shared;
  Vector model;
  double local_accuracy = 0.7;   // relative suboptimality allowed per local solve
  double subproblem_param = 0.2; // weight of the local quadratic correction term
  long round = 0;
};

DualState make_dual_state(int num_samples, int dimension, double local_accuracy,
                          double subproblem_param);

struct LocalUpdate {
  Vector delta_dual;    // change of the client's dual coordinates
  Vector delta_shared;  // features_k * delta_dual / (regularization * num_samples)
  int client = -1;
};

/// Runs `passes` epochs of randomized exact coordinate ascent on the client's
/// local dual subproblem. Zero passes return a null update. Throws
/// std::logic_error if the subproblem objective ever decreases.
LocalUpdate local_dual_update(const PartitionedDataset& data, int client, const DualState& state,
                              const LossModel& loss, int passes, std::mt19937_64& rng);

/// Local subproblem objective at the given coordinate change `delta`
/// (size of the client's shard). Larger is better.
double local_update_objective(const PartitionedDataset& data, int client, const DualState& state,
                              const LossModel& loss, const Vector& delta);

/// True when (opt - achieved) / (achieved - null) <= local_accuracy, where all
/// three are local objective values and `reference_optimum` is the objective
/// at a near-exact maximizer. Throws std::domain_error on a no-progress
/// candidate (zero denominator).
bool check_local_accuracy(const PartitionedDataset& data, int client, const LocalUpdate& candidate,
                          double reference_optimum, const DualState& state, const LossModel& loss);

/// Applies the scheduled clients' updates, each weighted by 1/num_clients,
/// then refreshes the model and increments the round counter. Rejects
/// duplicate client ids.
DualState aggregate(DualState state, const std::vector<LocalUpdate>& updates,
                    const BoolArray& scheduled, const PartitionedDataset& data);

/// Dual objective: -(1/D) * sum_i f*(-theta_i) - xi * rho*(shared).
double dual_objective(const DualState& state, const PartitionedDataset& data,
                      const LossModel& loss);

/// Primal objective: (1/D) * sum_i f(x_i' w) + xi * rho(w).
double primal_objective(const PartitionedDataset& data, const LossModel& loss,
                        const Vector& model);

/// Max-norm distance between the stored shared vector and the one recomputed
/// from the dual coordinates; zero up to round-off by construction.
double dual_consistency_residual(const DualState& state, const PartitionedDataset& data,
                                 const LossModel& loss);

/// Guaranteed ceiling on the final optimality gap of scheduled training:
/// D * (1 - (1-beta) * sum_{t,k} (D_k/(T*D)) * s_k(t))^T.
double gap_bound(const std::vector<BoolArray>& schedule_history,
                 const std::vector<int>& shard_sizes, double local_accuracy, long horizon,
                 long total_data);

/// Same bound from the accumulated scheduled data mass
/// sum_{t,k} (D_k/D) * s_k(t).
double gap_bound_value(double scheduled_mass_sum, double local_accuracy, long horizon,
                       long total_data);

struct CentralizedResult {
  Vector model;
  Vector dual_coords;
  double primal = 0.0;  // loss at the trained model
  double dual = 0.0;    // matching dual value
  long epochs = 0;
};

/// Trains on the full dataset with exact coordinate ascent until the duality
/// gap drops below `tolerance`. Throws std::runtime_error when the epoch cap
/// is hit first.
CentralizedResult centralized_train(const Matrix& features, const Vector& labels,
                                    const LossModel& loss, double tolerance, long max_epochs,
                                    std::mt19937_64& rng);

/// Fraction of samples whose margin sign matches the label sign; a zero
/// margin counts as positive.
double classification_accuracy(const Matrix& features, const Vector& labels, const Vector& model);

}  // namespace flsched
