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

#include "flsched/dual.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "flsched/rng.hpp"

namespace flsched {

DualState make_dual_state(int num_samples, int dimension, double local_accuracy,
                          double subproblem_param) {
  if (local_accuracy <= 0.0 || local_accuracy >= 1.0)
    throw std::invalid_argument("dual: local_accuracy must lie in (0, 1)");
  if (subproblem_param <= 0.0)
    throw std::invalid_argument("dual: subproblem_param must be > 0");
  DualState state;
  state.dual_coords = Vector::Zero(num_samples);
  state.shared = Vector::Zero(dimension);
  state.model = Vector::Zero(dimension);
  state.local_accuracy = local_accuracy;
  state.subproblem_param = subproblem_param;
  return state;
}

LocalUpdate local_dual_update(const PartitionedDataset& data, int client, const DualState& state,
                              const LossModel& loss, int passes, std::mt19937_64& rng) {
  const auto& shard = data.shards.at(client);
  const int n = static_cast<int>(shard.size());
  const long total = data.num_samples();
  const double xi = loss.regularization();
  const double damping = state.subproblem_param / xi;

  LocalUpdate update;
  update.client = client;
  update.delta_dual = Vector::Zero(n);
  update.delta_shared = Vector::Zero(data.dimension());
  if (passes <= 0 || n == 0) return update;

  // Frozen quantities for the whole solve: margins of the snapshot model and
  // per-sample squared feature norms.
  Vector margins(n), sq_norms(n);
  for (int j = 0; j < n; ++j) {
    margins[j] = data.features.col(shard[j]).dot(state.model);
    sq_norms[j] = data.features.col(shard[j]).squaredNorm();
  }

  Vector residual = Vector::Zero(data.dimension());  // features_k * delta
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (int pass = 0; pass < passes; ++pass) {
    shuffle_inplace(order, rng);
    for (int j : order) {
      const int i = shard[j];
      const double tau = state.dual_coords[i] + update.delta_dual[j];
      const double linear =
          margins[j] + damping * data.features.col(i).dot(residual) / total;
      const double quad = damping * sq_norms[j] / total;
      double step = loss.solve_coordinate(tau, data.labels[i], linear, quad);
      // Keep the coordinate inside the conjugate domain.
      step = loss.clamp_dual(tau + step, data.labels[i]) - tau;
      if (step != 0.0) {
        update.delta_dual[j] += step;
        residual += step * data.features.col(i);
      }
    }
  }
  update.delta_shared = residual / (xi * static_cast<double>(total));

  const double before = local_update_objective(data, client, state, loss, Vector::Zero(n));
  const double after = local_update_objective(data, client, state, loss, update.delta_dual);
  if (after < before - 1e-12 * (1.0 + std::abs(before)))
    throw std::logic_error("dual: local subproblem objective decreased");
  return update;
}

double local_update_objective(const PartitionedDataset& data, int client, const DualState& state,
                              const LossModel& loss, const Vector& delta) {
  const auto& shard = data.shards.at(client);
  if (delta.size() != static_cast<Eigen::Index>(shard.size()))
    throw std::invalid_argument("dual: delta size does not match the shard");
  const double total = static_cast<double>(data.num_samples());
  const double xi = loss.regularization();

  double conj_sum = 0.0;
  Vector pushed = Vector::Zero(data.dimension());
  double cross = 0.0;
  for (std::size_t j = 0; j < shard.size(); ++j) {
    const int i = shard[j];
    conj_sum += loss.conjugate(-(state.dual_coords[i] + delta[j]), data.labels[i]);
    pushed += delta[j] * data.features.col(i);
    cross += delta[j] * data.features.col(i).dot(state.model);
  }
  return -conj_sum / total - xi / data.num_clients() * LossModel::regularizer_conjugate(state.shared) -
         cross / total -
         (state.subproblem_param / xi) / (2.0 * total * total) * pushed.squaredNorm();
}

bool check_local_accuracy(const PartitionedDataset& data, int client, const LocalUpdate& candidate,
                          double reference_optimum, const DualState& state,
                          const LossModel& loss) {
  const double achieved = local_update_objective(data, client, state, loss, candidate.delta_dual);
  const double null_value = local_update_objective(
      data, client, state, loss, Vector::Zero(candidate.delta_dual.size()));
  const double denom = achieved - null_value;
  if (std::abs(denom) < 1e-15 * (1.0 + std::abs(null_value)))
    throw std::domain_error("dual: no-progress update, accuracy ratio undefined");
  return (reference_optimum - achieved) / denom <= state.local_accuracy;
}

DualState aggregate(DualState state, const std::vector<LocalUpdate>& updates,
                    const BoolArray& scheduled, const PartitionedDataset& data) {
  const int num_clients = data.num_clients();
  if (scheduled.size() != num_clients)
    throw std::invalid_argument("dual: schedule size does not match the client count");
  std::vector<bool> seen(num_clients, false);
  for (const LocalUpdate& up : updates) {
    if (up.client < 0 || up.client >= num_clients)
      throw std::invalid_argument("dual: update from unknown client");
    if (seen[up.client]) throw std::invalid_argument("dual: duplicate client update");
    seen[up.client] = true;
    if (!scheduled[up.client]) continue;
    const auto& shard = data.shards[up.client];
    if (up.delta_dual.size() != static_cast<Eigen::Index>(shard.size()))
      throw std::invalid_argument("dual: update size does not match the shard");
    state.shared += up.delta_shared / num_clients;
    for (std::size_t j = 0; j < shard.size(); ++j)
      state.dual_coords[shard[j]] += up.delta_dual[j] / num_clients;
  }
  state.model = LossModel::regularizer_conjugate_grad(state.shared);
  state.round += 1;
  return state;
}

double dual_objective(const DualState& state, const PartitionedDataset& data,
                      const LossModel& loss) {
  const double total = static_cast<double>(data.num_samples());
  double conj_sum = 0.0;
  for (int i = 0; i < data.num_samples(); ++i)
    conj_sum += loss.conjugate(-state.dual_coords[i], data.labels[i]);
  return -conj_sum / total -
         loss.regularization() * LossModel::regularizer_conjugate(state.shared);
}

double primal_objective(const PartitionedDataset& data, const LossModel& loss,
                        const Vector& model) {
  const double total = static_cast<double>(data.num_samples());
  double loss_sum = 0.0;
  for (int i = 0; i < data.num_samples(); ++i)
    loss_sum += loss.value(data.features.col(i).dot(model), data.labels[i]);
  return loss_sum / total + loss.regularization() * LossModel::regularizer(model);
}

double dual_consistency_residual(const DualState& state, const PartitionedDataset& data,
                                 const LossModel& loss) {
  const Vector recomputed = data.features * state.dual_coords /
                            (loss.regularization() * static_cast<double>(data.num_samples()));
  return (recomputed - state.shared).cwiseAbs().maxCoeff();
}

double gap_bound_value(double scheduled_mass_sum, double local_accuracy, long horizon,
                       long total_data) {
  if (horizon <= 0) return static_cast<double>(total_data);
  const double base =
      1.0 - (1.0 - local_accuracy) * scheduled_mass_sum / static_cast<double>(horizon);
  return static_cast<double>(total_data) * std::pow(base, static_cast<double>(horizon));
}

double gap_bound(const std::vector<BoolArray>& schedule_history,
                 const std::vector<int>& shard_sizes, double local_accuracy, long horizon,
                 long total_data) {
  if (static_cast<long>(schedule_history.size()) != horizon)
    throw std::invalid_argument("gap_bound: history must cover rounds 1..T");
  double mass = 0.0;
  for (const BoolArray& round : schedule_history) {
    if (round.size() != static_cast<Eigen::Index>(shard_sizes.size()))
      throw std::invalid_argument("gap_bound: schedule/shard size mismatch");
    for (Eigen::Index k = 0; k < round.size(); ++k)
      if (round[k]) mass += static_cast<double>(shard_sizes[k]) / total_data;
  }
  return gap_bound_value(mass, local_accuracy, horizon, total_data);
}

CentralizedResult centralized_train(const Matrix& features, const Vector& labels,
                                    const LossModel& loss, double tolerance, long max_epochs,
                                    std::mt19937_64& rng) {
  PartitionedDataset whole;
  whole.features = features;
  whole.labels = labels;
  whole.shards.resize(1);
  whole.shards[0].resize(features.cols());
  std::iota(whole.shards[0].begin(), whole.shards[0].end(), 0);

  // With a single client and unit subproblem weight the local solve is exact
  // coordinate ascent on the true dual.
  DualState state = make_dual_state(whole.num_samples(), whole.dimension(), 0.5, 1.0);
  const BoolArray all = BoolArray::Constant(1, true);

  CentralizedResult result;
  for (long epoch = 1; epoch <= max_epochs; ++epoch) {
    const LocalUpdate up = local_dual_update(whole, 0, state, loss, 1, rng);
    state = aggregate(state, {up}, all, whole);
    result.primal = primal_objective(whole, loss, state.model);
    result.dual = dual_objective(state, whole, loss);
    result.epochs = epoch;
    if (result.primal - result.dual <= tolerance) {
      result.model = state.model;
      result.dual_coords = state.dual_coords;
      return result;
    }
  }
  throw std::runtime_error("dual: centralized training did not converge within the epoch cap");
}

double classification_accuracy(const Matrix& features, const Vector& labels,
                               const Vector& model) {
  if (features.cols() == 0) return 0.0;
  int hits = 0;
  for (Eigen::Index i = 0; i < features.cols(); ++i) {
    const double margin = features.col(i).dot(model);
    const bool positive = margin >= 0.0;
    if (positive == (labels[i] >= 0.0)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(features.cols());
}

}  // namespace flsched
