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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "flsched/dual.hpp"
#include "flsched/rng.hpp"

using namespace flsched;

namespace {

PartitionedDataset toy_data(int num_samples, int dimension, int num_clients, double exponent,
                            std::uint64_t seed) {
  auto data_rng = make_stream(seed, "data");
  auto part_rng = make_stream(seed, "partition");
  Dataset data = make_synthetic(num_samples, dimension, 2, 2.0, data_rng);
  return zipf_partition(std::move(data), num_clients, exponent, part_rng);
}

/// Closed-form ridge minimizer of (1/D) sum (x_i'w - y_i)^2/2 + xi |w|^2/2.
Vector ridge_closed_form(const Matrix& features, const Vector& labels, double xi) {
  const double total = static_cast<double>(features.cols());
  const Matrix gram = features * features.transpose() / total +
                      xi * Matrix::Identity(features.rows(), features.rows());
  return gram.ldlt().solve(features * labels / total);
}

}  // namespace

TEST_CASE("zero passes produce the null update") {
  const PartitionedDataset data = toy_data(40, 3, 2, 0.0, 51);
  const DualState state = make_dual_state(40, 3, 0.7, 0.2);
  const RidgeLoss loss(1.0);
  auto rng = make_stream(51, "solver");
  const LocalUpdate up = local_dual_update(data, 0, state, loss, 0, rng);
  CHECK(up.delta_dual.cwiseAbs().maxCoeff() == 0.0);
  CHECK(up.delta_shared.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("local updates never lower their own objective") {
  const PartitionedDataset data = toy_data(60, 4, 3, 1.0, 52);
  const RidgeLoss ridge(1.0);
  const LogisticLoss logistic(1.0);
  auto rng = make_stream(52, "solver");
  for (const LossModel* loss : {static_cast<const LossModel*>(&ridge),
                                static_cast<const LossModel*>(&logistic)}) {
    DualState state = make_dual_state(60, 4, 0.7, 0.2);
    for (int round = 0; round < 3; ++round) {
      std::vector<LocalUpdate> updates;
      for (int k = 0; k < 3; ++k) {
        const LocalUpdate up = local_dual_update(data, k, state, *loss, 2, rng);
        const double at_zero =
            local_update_objective(data, k, state, *loss, Vector::Zero(up.delta_dual.size()));
        const double at_update = local_update_objective(data, k, state, *loss, up.delta_dual);
        CHECK(at_update >= at_zero - 1e-12);
        updates.push_back(up);
      }
      state = aggregate(std::move(state), updates, BoolArray::Constant(3, true), data);
    }
  }
}

TEST_CASE("delta_shared always matches its defining relation") {
  const PartitionedDataset data = toy_data(50, 3, 2, 0.5, 53);
  const DualState state = make_dual_state(50, 3, 0.7, 0.2);
  const RidgeLoss loss(2.0);
  auto rng = make_stream(53, "solver");
  const LocalUpdate up = local_dual_update(data, 1, state, loss, 3, rng);
  Vector pushed = Vector::Zero(3);
  for (std::size_t j = 0; j < data.shards[1].size(); ++j)
    pushed += up.delta_dual[j] * data.features.col(data.shards[1][j]);
  pushed /= 2.0 * 50.0;
  CHECK((pushed - up.delta_shared).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single-client training reaches the closed-form ridge solution") {
  auto data_rng = make_stream(54, "data");
  Dataset raw = make_synthetic(200, 5, 2, 2.0, data_rng);
  const Vector closed = ridge_closed_form(raw.features, raw.labels, 1.0);

  auto part_rng = make_stream(54, "partition");
  const PartitionedDataset data = zipf_partition(std::move(raw), 1, 0.0, part_rng);
  DualState state = make_dual_state(200, 5, 0.7, 1.0);
  const RidgeLoss loss(1.0);
  auto rng = make_stream(54, "solver");
  for (int round = 0; round < 300; ++round) {
    const LocalUpdate up = local_dual_update(data, 0, state, loss, 1, rng);
    state = aggregate(std::move(state), {up}, BoolArray::Constant(1, true), data);
  }
  CHECK((state.model - closed).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(primal_objective(data, loss, state.model) - dual_objective(state, data, loss) < 1e-6);
}

TEST_CASE("local accuracy check") {
  // One sample, one client: the local objective is an explicit parabola
  // g(delta) = -(theta+delta-y)^2/2/D - ... so improvement fractions can be
  // dialed in exactly.
  PartitionedDataset data;
  data.features = Matrix::Zero(1, 1);  // x = 0 kills every coupling term
  data.features(0, 0) = 1.0;
  data.labels = Vector::Constant(1, 1.0);
  data.shards = {{0}};
  const RidgeLoss loss(1.0);
  DualState state = make_dual_state(1, 1, 0.7, 1.0);

  const auto objective = [&](double delta) {
    return local_update_objective(data, 0, state, loss, Vector::Constant(1, delta));
  };
  // Maximize over delta by scanning; the solver must agree.
  auto rng = make_stream(55, "solver");
  const LocalUpdate exact = local_dual_update(data, 0, state, loss, 50, rng);
  const double best = objective(exact.delta_dual[0]);

  CHECK(check_local_accuracy(data, 0, exact, best, state, loss));  // ratio 0

  LocalUpdate null_update = exact;
  null_update.delta_dual = Vector::Zero(1);
  null_update.delta_shared = Vector::Zero(1);
  CHECK_THROWS_AS(check_local_accuracy(data, 0, null_update, best, state, loss),
                  std::domain_error);

  // The objective is a parabola through 0 peaking at delta*: value fraction
  // f of the peak improvement is reached at delta* (1 - sqrt(1-f)).
  const double peak = exact.delta_dual[0];
  const double zero_value = objective(0.0);
  const auto candidate_at_fraction = [&](double fraction) {
    LocalUpdate up = exact;
    up.delta_dual = Vector::Constant(1, peak * (1.0 - std::sqrt(1.0 - fraction)));
    const double got = objective(up.delta_dual[0]);
    CHECK(got - zero_value ==
          doctest::Approx(fraction * (best - zero_value)).epsilon(1e-9));
    return up;
  };
  // 50 % of the optimal improvement: ratio 1 > 0.7 -> rejected.
  CHECK_FALSE(check_local_accuracy(data, 0, candidate_at_fraction(0.5), best, state, loss));
  // 60 % of the optimal improvement: ratio 2/3 <= 0.7 -> accepted.
  CHECK(check_local_accuracy(data, 0, candidate_at_fraction(0.6), best, state, loss));
}

TEST_CASE("budgeted local solves meet the default accuracy target") {
  const PartitionedDataset data = toy_data(120, 5, 4, 1.0, 56);
  const RidgeLoss loss(1.0);
  DualState state = make_dual_state(120, 5, 0.7, 0.2);
  auto rng = make_stream(56, "solver");
  for (int k = 0; k < 4; ++k) {
    auto tight_rng = make_stream(57, "solver");
    const LocalUpdate tight = local_dual_update(data, k, state, loss, 200, tight_rng);
    const double reference = local_update_objective(data, k, state, loss, tight.delta_dual);
    const LocalUpdate budgeted = local_dual_update(data, k, state, loss, 2, rng);
    CHECK(check_local_accuracy(data, k, budgeted, reference, state, loss));
  }
}

TEST_CASE("aggregation rules") {
  const PartitionedDataset data = toy_data(20, 2, 2, 0.0, 58);
  const RidgeLoss loss(1.0);
  DualState state = make_dual_state(20, 2, 0.7, 0.2);

  LocalUpdate a;
  a.client = 0;
  a.delta_dual = Vector::Constant(data.shards[0].size(), 0.5);
  a.delta_shared = Vector::Constant(2, 1.0);
  LocalUpdate b;
  b.client = 1;
  b.delta_dual = Vector::Constant(data.shards[1].size(), -0.25);
  b.delta_shared = Vector::Constant(2, 0.5);

  SUBCASE("empty schedule only advances the round") {
    const DualState next =
        aggregate(state, {a, b}, BoolArray::Constant(2, false), data);
    CHECK(next.round == 1);
    CHECK(next.dual_coords.cwiseAbs().maxCoeff() == 0.0);
    CHECK(next.shared.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("both scheduled: averaged shared and dual updates") {
    const DualState next = aggregate(state, {a, b}, BoolArray::Constant(2, true), data);
    CHECK(next.shared[0] == doctest::Approx((1.0 + 0.5) / 2.0));
    CHECK(next.dual_coords[data.shards[0][0]] == doctest::Approx(0.25));
    CHECK(next.dual_coords[data.shards[1][0]] == doctest::Approx(-0.125));
    CHECK((next.model - next.shared).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("duplicate client updates are rejected") {
    CHECK_THROWS_AS(aggregate(state, {a, a}, BoolArray::Constant(2, true), data),
                    std::invalid_argument);
  }
}

TEST_CASE("single client aggregation applies the raw update") {
  const PartitionedDataset data = toy_data(10, 2, 1, 0.0, 59);
  DualState state = make_dual_state(10, 2, 0.7, 1.0);
  LocalUpdate up;
  up.client = 0;
  up.delta_dual = Vector::Constant(10, 0.125);
  up.delta_shared = Vector::Constant(2, -2.0);
  const DualState next = aggregate(state, {up}, BoolArray::Constant(1, true), data);
  CHECK(next.dual_coords[3] == doctest::Approx(0.125));
  CHECK(next.shared[1] == doctest::Approx(-2.0));
}

TEST_CASE("shared vector stays consistent with the dual coordinates") {
  const PartitionedDataset data = toy_data(80, 4, 4, 1.0, 60);
  const RidgeLoss loss(1.0);
  DualState state = make_dual_state(80, 4, 0.7, 0.2);
  auto rng = make_stream(60, "solver");
  BoolArray schedule = BoolArray::Constant(4, false);
  for (int round = 0; round < 6; ++round) {
    schedule.setConstant(false);
    schedule[round % 4] = true;  // partial scheduling
    if (round % 3 == 0) schedule.setConstant(true);
    std::vector<LocalUpdate> updates;
    for (int k = 0; k < 4; ++k)
      updates.push_back(local_dual_update(data, k, state, loss, 2, rng));
    state = aggregate(std::move(state), updates, schedule, data);
    CHECK(dual_consistency_residual(state, data, loss) < 1e-9);
  }
}

TEST_CASE("dual objective basics") {
  const PartitionedDataset data = toy_data(30, 3, 2, 0.0, 61);
  const RidgeLoss loss(1.0);
  const DualState zero = make_dual_state(30, 3, 0.7, 0.2);
  CHECK(dual_objective(zero, data, loss) == doctest::Approx(0.0));
}

TEST_CASE("centralized dual value dominates random dual points") {
  const PartitionedDataset data = toy_data(60, 4, 1, 0.0, 62);
  const RidgeLoss loss(1.0);
  auto rng = make_stream(62, "centralized");
  const CentralizedResult central =
      centralized_train(data.features, data.labels, loss, 1e-10, 100000, rng);
  DualState probe = make_dual_state(60, 4, 0.7, 1.0);
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 60; ++j) probe.dual_coords[j] = 3.0 * (uniform01(rng) - 0.5);
    probe.shared = data.features * probe.dual_coords / 60.0;
    probe.model = probe.shared;
    CHECK(dual_objective(probe, data, loss) <= central.dual + 1e-9);
  }
}

TEST_CASE("dual ascent under full participation with a unit subproblem weight") {
  const PartitionedDataset data = toy_data(100, 4, 4, 1.0, 63);
  const RidgeLoss loss(1.0);
  DualState state = make_dual_state(100, 4, 0.7, 1.0);
  auto rng = make_stream(63, "solver");
  double previous = dual_objective(state, data, loss);
  for (int round = 0; round < 40; ++round) {
    std::vector<LocalUpdate> updates;
    for (int k = 0; k < 4; ++k)
      updates.push_back(local_dual_update(data, k, state, loss, 2, rng));
    state = aggregate(std::move(state), updates, BoolArray::Constant(4, true), data);
    const double value = dual_objective(state, data, loss);
    CHECK(value >= previous - 1e-9);
    previous = value;
  }
}

TEST_CASE("gap bound values") {
  const std::vector<int> shards = {50, 50, 50, 50};
  SUBCASE("no client ever scheduled") {
    const std::vector<BoolArray> history(10, BoolArray::Constant(4, false));
    CHECK(gap_bound(history, shards, 0.7, 10, 200) == doctest::Approx(200.0));
  }
  SUBCASE("everyone scheduled every round") {
    const std::vector<BoolArray> history(10, BoolArray::Constant(4, true));
    CHECK(gap_bound(history, shards, 0.7, 10, 200) ==
          doctest::Approx(200.0 * std::pow(0.7, 10)).epsilon(1e-12));
  }
  SUBCASE("reference parameters, independently multiplied out") {
    long double product = 6000.0L;
    for (int t = 0; t < 100; ++t) product *= 0.7L;
    CHECK(gap_bound_value(100.0, 0.7, 100, 6000) ==
          doctest::Approx(static_cast<double>(product)).epsilon(1e-10));
    CHECK(static_cast<double>(product) == doctest::Approx(1.9403e-12).epsilon(1e-3));
  }
  SUBCASE("scheduling a superset never raises the bound") {
    std::vector<BoolArray> history(10, BoolArray::Constant(4, false));
    for (auto& round : history) round[0] = true;
    const double sparse = gap_bound(history, shards, 0.7, 10, 200);
    for (auto& round : history) round[2] = true;
    const double denser = gap_bound(history, shards, 0.7, 10, 200);
    CHECK(denser <= sparse);
  }
  SUBCASE("history must cover the horizon") {
    const std::vector<BoolArray> history(3, BoolArray::Constant(4, true));
    CHECK_THROWS_AS(gap_bound(history, shards, 0.7, 10, 200), std::invalid_argument);
  }
}

TEST_CASE("centralized training") {
  SUBCASE("matches the ridge closed form") {
    auto data_rng = make_stream(64, "data");
    const Dataset data = make_synthetic(150, 5, 2, 2.0, data_rng);
    const RidgeLoss loss(1.0);
    auto rng = make_stream(64, "centralized");
    // Strong convexity ties the parameter error to sqrt(gap), so reaching
    // 1e-8 in the model needs a near-floor duality-gap tolerance.
    const CentralizedResult central =
        centralized_train(data.features, data.labels, loss, 3e-15, 100000, rng);
    const Vector closed = ridge_closed_form(data.features, data.labels, 1.0);
    CHECK((central.model - closed).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(central.primal - central.dual <= 3e-15);
  }
  SUBCASE("zero features give the zero model") {
    Matrix features = Matrix::Zero(3, 10);
    Vector labels = Vector::Constant(10, 1.0);
    const RidgeLoss loss(1.0);
    auto rng = make_stream(65, "centralized");
    const CentralizedResult central = centralized_train(features, labels, loss, 1e-10, 1000, rng);
    CHECK(central.model.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("logistic training closes its duality gap") {
    auto data_rng = make_stream(66, "data");
    const Dataset data = make_synthetic(80, 3, 2, 2.0, data_rng);
    const LogisticLoss loss(0.5);
    auto rng = make_stream(66, "centralized");
    const CentralizedResult central =
        centralized_train(data.features, data.labels, loss, 1e-8, 200000, rng);
    CHECK(central.primal - central.dual <= 1e-8);
  }
  SUBCASE("impossible tolerance reports non-convergence") {
    auto data_rng = make_stream(67, "data");
    const Dataset data = make_synthetic(30, 3, 2, 2.0, data_rng);
    const RidgeLoss loss(1.0);
    auto rng = make_stream(67, "centralized");
    CHECK_THROWS_AS(centralized_train(data.features, data.labels, loss, 0.0, 3, rng),
                    std::runtime_error);
  }
}

TEST_CASE("classification accuracy counts sign agreements") {
  Matrix features(2, 4);
  features << 1, -1, 2, 0.5, 0, 0, 0, 0;
  Vector labels(4);
  labels << 1, -1, -1, 1;
  Vector model(2);
  model << 1, 0;
  CHECK(classification_accuracy(features, labels, model) == doctest::Approx(0.75));
}
