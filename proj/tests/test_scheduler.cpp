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
#include <functional>
#include <vector>

#include "flsched/rng.hpp"
#include "flsched/scheduler.hpp"

using namespace flsched;

namespace {

SchedulerConfig table_config() {
  SchedulerConfig cfg;
  cfg.horizon = 100;
  cfg.tradeoff = 1.0;
  cfg.exploration_weight = 1.0;
  cfg.info_cap = 6.0;
  cfg.local_accuracy = 0.7;
  cfg.total_data = 6000;
  cfg.shard_sizes = {600, 600, 600, 600, 600, 600, 600, 600, 600, 600};
  cfg.num_rbs = 6;
  return cfg;
}

// Exhaustive search over all valid decisions, mirroring the matching
// conventions (zero-weight edges excluded, lexicographic tie-break).
double enumerate_best(const Matrix& weights, const BoolMatrix& feasible,
                      std::vector<int>* best_out = nullptr) {
  const int clients = static_cast<int>(weights.rows());
  const int rbs = static_cast<int>(weights.cols());
  std::vector<int> current(clients, -1), best(clients, -1);
  std::vector<bool> used(rbs, false);
  double best_value = 0.0;
  const std::function<void(int, double)> recurse = [&](int k, double value) {
    if (k == clients) {
      if (value > best_value + 1e-15) {
        best_value = value;
        best = current;
      }
      return;
    }
    for (int b = 0; b < rbs; ++b) {
      if (used[b] || !feasible(k, b) || !(weights(k, b) > 0.0)) continue;
      used[b] = true;
      current[k] = b;
      recurse(k + 1, value + weights(k, b));
      current[k] = -1;
      used[b] = false;
    }
    recurse(k + 1, value);
  };
  recurse(0, 0.0);
  if (best_out) *best_out = best;
  return best_value;
}

Matrix dpp_weights(const SchedulerState& state, const SchedulerConfig& cfg, const Matrix& info) {
  Matrix weights(info.rows(), info.cols());
  for (Eigen::Index k = 0; k < info.rows(); ++k)
    for (Eigen::Index b = 0; b < info.cols(); ++b)
      weights(k, b) = state.utility_queue * (1.0 - cfg.local_accuracy) * cfg.shard_sizes[k] /
                          static_cast<double>(cfg.total_data) +
                      state.info_queue * info(k, b);
  return weights;
}

}  // namespace

TEST_CASE("auxiliary targets follow the queue pressures") {
  SchedulerConfig cfg = table_config();
  SchedulerState state;

  SUBCASE("empty utility queue sits below the huge initial slope") {
    state.utility_queue = 0.0;
    state.utility_target_avg = 0.0;
    const AuxTargets aux = aux_targets(state, cfg);
    CHECK(aux.alpha == doctest::Approx(-600000.0));
    CHECK(aux.utility_target == doctest::Approx(0.3));  // 1 - local_accuracy
  }
  SUBCASE("queue above the collapsed slope turns the target off") {
    state.utility_queue = 1.0;
    state.utility_target_avg = 0.3;  // slope ~ 600000 * 0.7^99, essentially zero
    const AuxTargets aux = aux_targets(state, cfg);
    CHECK(aux.alpha > 0.0);
    CHECK(aux.utility_target == 0.0);
  }
  SUBCASE("information target boundary is inclusive") {
    state.info_queue = cfg.tradeoff * cfg.exploration_weight;  // exactly at the threshold
    CHECK(aux_targets(state, cfg).info_target == doctest::Approx(cfg.info_cap));
    state.info_queue += 1e-9;
    CHECK(aux_targets(state, cfg).info_target == 0.0);
  }
  SUBCASE("utility target boundary is inclusive") {
    state.utility_target_avg = 0.0;
    state.utility_queue = cfg.tradeoff * 6000.0 * 100.0;  // alpha exactly zero
    CHECK(aux_targets(state, cfg).utility_target == doctest::Approx(0.3));
  }
}

TEST_CASE("queue recursion arithmetic") {
  SchedulerConfig cfg = table_config();
  cfg.shard_sizes = {2000, 2000, 2000};
  SchedulerState state;
  state.utility_queue = 0.0;
  state.info_queue = 0.5;

  ScheduleDecision decision;
  decision.scheduled = BoolArray::Constant(3, false);
  decision.scheduled[0] = true;  // u = 0.3 * 2000/6000 = 0.1
  decision.allocation = BoolMatrix::Constant(3, 6, false);
  decision.allocation(0, 2) = true;
  decision.utility_target = 0.3;
  decision.info_target = 0.0;

  Matrix info = Matrix::Zero(3, 6);
  info(0, 2) = 0.9;
  const SchedulerState next = queue_update(state, decision, info, cfg);
  CHECK(next.utility_queue == doctest::Approx(0.2));         // max(0, 0 + 0.3 - 0.1)
  CHECK(next.info_queue == doctest::Approx(0.0));            // max(0, 0.5 + 0 - 0.9)
  CHECK(next.utility_target_avg == doctest::Approx(0.3));
  CHECK(next.slot == 1);
}

TEST_CASE("full scheduling with equal shards serves 1-beta") {
  const SchedulerConfig cfg = table_config();
  const BoolArray all = BoolArray::Constant(10, true);
  CHECK(scheduled_utility(all, cfg) == doctest::Approx(0.3));
}

TEST_CASE("running averages are recomputable from the decision log") {
  SchedulerConfig cfg = table_config();
  cfg.shard_sizes = {100, 50, 50};
  cfg.total_data = 200;
  cfg.num_rbs = 2;
  cfg.info_cap = 2.0;
  auto rng = make_stream(71, "scheduler");
  SchedulerState state;
  std::vector<double> utility_log, info_log;
  for (int t = 0; t < 50; ++t) {
    BoolMatrix feasible(3, 2);
    Matrix info(3, 2);
    for (int k = 0; k < 3; ++k)
      for (int b = 0; b < 2; ++b) {
        feasible(k, b) = uniform01(rng) < 0.5;
        info(k, b) = uniform01(rng);
      }
    const ScheduleDecision decision = dpp_schedule(state, cfg, feasible, info);
    utility_log.push_back(decision.utility_target);
    info_log.push_back(decision.info_target);
    state = queue_update(state, decision, info, cfg);
  }
  double mean_utility = 0.0, mean_info = 0.0;
  for (double v : utility_log) mean_utility += v;
  for (double v : info_log) mean_info += v;
  CHECK(state.utility_target_avg == doctest::Approx(mean_utility / 50).epsilon(1e-12));
  CHECK(state.info_target_avg == doctest::Approx(mean_info / 50).epsilon(1e-12));
  CHECK(state.slot == 50);
}

TEST_CASE("empty queues give the empty schedule") {
  const SchedulerConfig cfg = table_config();
  SchedulerState state;  // both queues zero -> all weights zero
  const BoolMatrix feasible = BoolMatrix::Constant(10, 6, true);
  const Matrix info = Matrix::Zero(10, 6);
  const ScheduleDecision decision = dpp_schedule(state, cfg, feasible, info);
  CHECK(decision.scheduled.count() == 0);
  CHECK(satisfies_constraints(decision, feasible));
}

TEST_CASE("dominant weight wins a contested RB") {
  SchedulerConfig cfg = table_config();
  cfg.shard_sizes = {1000, 1400};
  cfg.total_data = 2400;
  cfg.num_rbs = 1;
  SchedulerState state;
  state.utility_queue = 1.0;
  const BoolMatrix feasible = BoolMatrix::Constant(2, 1, true);
  const Matrix info = Matrix::Zero(2, 1);
  const ScheduleDecision decision = dpp_schedule(state, cfg, feasible, info);
  CHECK_FALSE(decision.scheduled[0]);
  CHECK(decision.scheduled[1]);
}

TEST_CASE("dpp matches exhaustive enumeration on random instances") {
  auto rng = make_stream(72, "scheduler");
  for (int trial = 0; trial < 200; ++trial) {
    const int clients = 1 + static_cast<int>(bounded_int(rng, 5));
    const int rbs = 1 + static_cast<int>(bounded_int(rng, 3));
    SchedulerConfig cfg = table_config();
    cfg.num_rbs = rbs;
    cfg.shard_sizes.assign(clients, 0);
    cfg.total_data = 0;
    for (int k = 0; k < clients; ++k) {
      cfg.shard_sizes[k] = 10 + static_cast<int>(bounded_int(rng, 200));
      cfg.total_data += cfg.shard_sizes[k];
    }
    SchedulerState state;
    state.utility_queue = 2.0 * uniform01(rng);
    state.info_queue = 2.0 * uniform01(rng);
    BoolMatrix feasible(clients, rbs);
    Matrix info(clients, rbs);
    for (int k = 0; k < clients; ++k)
      for (int b = 0; b < rbs; ++b) {
        feasible(k, b) = uniform01(rng) < 0.6;
        info(k, b) = uniform01(rng);
      }
    const ScheduleDecision decision = dpp_schedule(state, cfg, feasible, info);
    CHECK(satisfies_constraints(decision, feasible));

    std::vector<int> best;
    const double best_value = enumerate_best(dpp_weights(state, cfg, info), feasible, &best);
    double got = 0.0;
    const Matrix weights = dpp_weights(state, cfg, info);
    for (int k = 0; k < clients; ++k)
      for (int b = 0; b < rbs; ++b)
        if (decision.allocation(k, b)) got += weights(k, b);
    CHECK(got == doctest::Approx(best_value).epsilon(1e-12));
    for (int k = 0; k < clients; ++k)
      CHECK(decision.allocation.row(k).count() == (best[k] >= 0 ? 1 : 0));
  }
}

TEST_CASE("quantity-unaware weights") {
  SUBCASE("equal shards make both schedulers agree") {
    SchedulerConfig cfg = table_config();
    auto rng = make_stream(73, "scheduler");
    SchedulerState state;
    state.utility_queue = 1.3;
    state.info_queue = 0.4;
    for (int trial = 0; trial < 50; ++trial) {
      BoolMatrix feasible(10, 6);
      Matrix info(10, 6);
      for (int k = 0; k < 10; ++k)
        for (int b = 0; b < 6; ++b) {
          feasible(k, b) = uniform01(rng) < 0.5;
          info(k, b) = uniform01(rng);
        }
      const ScheduleDecision a = dpp_schedule(state, cfg, feasible, info);
      const ScheduleDecision b = qunaw_schedule(state, cfg, feasible, info);
      for (int k = 0; k < 10; ++k) {
        CHECK(a.scheduled[k] == b.scheduled[k]);
        for (int rb = 0; rb < 6; ++rb) CHECK(a.allocation(k, rb) == b.allocation(k, rb));
      }
    }
  }
  SUBCASE("size-blind ties against size-aware preferences") {
    SchedulerConfig cfg = table_config();
    cfg.num_rbs = 1;
    cfg.shard_sizes = {5000, 1000};
    cfg.total_data = 6000;
    SchedulerState state;
    state.utility_queue = 1.0;
    const BoolMatrix feasible = BoolMatrix::Constant(2, 1, true);
    const Matrix info = Matrix::Zero(2, 1);
    // Unaware: equal weights, tie-break picks client 0. Aware: client 0 too.
    CHECK(qunaw_schedule(state, cfg, feasible, info).scheduled[0]);
    CHECK(dpp_schedule(state, cfg, feasible, info).scheduled[0]);
    // With the sizes flipped the aware scheduler moves, the unaware one stays.
    cfg.shard_sizes = {1000, 5000};
    CHECK(qunaw_schedule(state, cfg, feasible, info).scheduled[0]);
    CHECK(dpp_schedule(state, cfg, feasible, info).scheduled[1]);
  }
  SUBCASE("nothing feasible, nothing scheduled") {
    SchedulerConfig cfg = table_config();
    SchedulerState state;
    state.utility_queue = 1.0;
    const BoolMatrix feasible = BoolMatrix::Constant(10, 6, false);
    const Matrix info = Matrix::Zero(10, 6);
    CHECK(qunaw_schedule(state, cfg, feasible, info).scheduled.count() == 0);
  }
}

TEST_CASE("random scheduling") {
  SchedulerConfig cfg = table_config();
  auto rng = make_stream(74, "scheduler");
  SUBCASE("no feasible pairs") {
    const BoolMatrix feasible = BoolMatrix::Constant(10, 6, false);
    const ScheduleDecision decision = rand_schedule(cfg, feasible, rng);
    CHECK(decision.scheduled.count() == 0);
  }
  SUBCASE("square fully feasible instance schedules everyone") {
    cfg.num_rbs = 6;
    cfg.shard_sizes = {1, 1, 1, 1, 1, 1};
    cfg.total_data = 6;
    const BoolMatrix feasible = BoolMatrix::Constant(6, 6, true);
    const ScheduleDecision decision = rand_schedule(cfg, feasible, rng);
    CHECK(decision.scheduled.count() == 6);
    CHECK(satisfies_constraints(decision, feasible));
  }
  SUBCASE("uniform selection frequencies") {
    cfg.num_rbs = 1;
    cfg.shard_sizes = {1, 1, 1};
    cfg.total_data = 3;
    const BoolMatrix feasible = BoolMatrix::Constant(3, 1, true);
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < 10000; ++i) {
      const ScheduleDecision decision = rand_schedule(cfg, feasible, rng);
      for (int k = 0; k < 3; ++k)
        if (decision.scheduled[k]) ++counts[k];
    }
    for (int k = 0; k < 3; ++k)
      CHECK(static_cast<double>(counts[k]) / 10000 ==
            doctest::Approx(1.0 / 3.0).epsilon(0.06));
  }
}

TEST_CASE("unconstrained baseline schedules everyone") {
  const ScheduleDecision ten = ideal_schedule(10, 6);
  CHECK(ten.scheduled.count() == 10);
  CHECK_FALSE(ten.rb_constrained);
  CHECK(satisfies_constraints(ten, BoolMatrix::Constant(10, 6, false)));  // checks skipped
  const ScheduleDecision one = ideal_schedule(1, 6);
  CHECK(one.scheduled.count() == 1);
}

TEST_CASE("decision invariants hold over a seeded run") {
  SchedulerConfig cfg = table_config();
  cfg.shard_sizes = {300, 120, 80, 60, 40};
  cfg.total_data = 600;
  cfg.num_rbs = 3;
  cfg.info_cap = 3.0;
  auto rng = make_stream(75, "scheduler");
  SchedulerState state;
  for (int t = 0; t < 500; ++t) {
    BoolMatrix feasible(5, 3);
    Matrix info(5, 3);
    for (int k = 0; k < 5; ++k)
      for (int b = 0; b < 3; ++b) {
        feasible(k, b) = uniform01(rng) < 0.45;
        info(k, b) = uniform01(rng);
      }
    const ScheduleDecision dpp = dpp_schedule(state, cfg, feasible, info);
    const ScheduleDecision unaware = qunaw_schedule(state, cfg, feasible, info);
    const ScheduleDecision random = rand_schedule(cfg, feasible, rng);
    CHECK(satisfies_constraints(dpp, feasible));
    CHECK(satisfies_constraints(unaware, feasible));
    CHECK(satisfies_constraints(random, feasible));
    state = queue_update(state, dpp, info, cfg);
    CHECK(state.utility_queue >= 0.0);
    CHECK(state.info_queue >= 0.0);
  }
}

TEST_CASE("scaling every weight preserves the dpp decision") {
  SchedulerConfig cfg = table_config();
  cfg.shard_sizes = {300, 120, 80, 60, 40};
  cfg.total_data = 600;
  cfg.num_rbs = 3;
  auto rng = make_stream(76, "scheduler");
  SchedulerState base;
  base.utility_queue = 0.8;
  base.info_queue = 0.4;
  for (int trial = 0; trial < 50; ++trial) {
    BoolMatrix feasible(5, 3);
    Matrix info(5, 3);
    for (int k = 0; k < 5; ++k)
      for (int b = 0; b < 3; ++b) {
        feasible(k, b) = uniform01(rng) < 0.6;
        info(k, b) = uniform01(rng);
      }
    const ScheduleDecision a = dpp_schedule(base, cfg, feasible, info);
    SchedulerState scaled = base;
    scaled.utility_queue *= 4.0;  // scales every edge weight by 4
    scaled.info_queue *= 4.0;
    const ScheduleDecision b = dpp_schedule(scaled, cfg, feasible, info);
    for (int k = 0; k < 5; ++k) CHECK(a.scheduled[k] == b.scheduled[k]);
  }
}

TEST_CASE("perfect CSI reduces the matching to quantity-only weights") {
  SchedulerConfig cfg = table_config();
  cfg.shard_sizes = {300, 120, 80, 60, 40};
  cfg.total_data = 600;
  cfg.num_rbs = 3;
  SchedulerState state;
  state.utility_queue = 1.0;
  state.info_queue = 5.0;  // irrelevant when the information matrix is zero
  auto rng = make_stream(77, "scheduler");
  for (int trial = 0; trial < 30; ++trial) {
    BoolMatrix feasible(5, 3);
    for (int k = 0; k < 5; ++k)
      for (int b = 0; b < 3; ++b) feasible(k, b) = uniform01(rng) < 0.6;
    const Matrix info = Matrix::Zero(5, 3);
    const ScheduleDecision with_info_queue = dpp_schedule(state, cfg, feasible, info);
    SchedulerState no_info = state;
    no_info.info_queue = 0.0;
    const ScheduleDecision without = dpp_schedule(no_info, cfg, feasible, info);
    for (int k = 0; k < 5; ++k) CHECK(with_info_queue.scheduled[k] == without.scheduled[k]);
  }
}

TEST_CASE("virtual queues are stable over a long horizon") {
  SchedulerConfig cfg = table_config();
  cfg.horizon = 10000;
  cfg.shard_sizes = {140, 90, 80, 75, 60, 50, 40, 30, 20, 15};
  cfg.total_data = 600;
  auto rng = make_stream(78, "scheduler");
  SchedulerState state;
  std::vector<double> utility_trace, info_trace;
  for (int t = 0; t < 10000; ++t) {
    BoolMatrix feasible(10, 6);
    Matrix info(10, 6);
    for (int k = 0; k < 10; ++k)
      for (int b = 0; b < 6; ++b) {
        feasible(k, b) = uniform01(rng) < 0.4;  // above exp(-1)
        info(k, b) = uniform01(rng);
      }
    const ScheduleDecision decision = dpp_schedule(state, cfg, feasible, info);
    state = queue_update(state, decision, info, cfg);
    utility_trace.push_back(state.utility_queue);
    info_trace.push_back(state.info_queue);
  }
  // Slope of the last decile, queue growth per slot.
  const auto slope = [](const std::vector<double>& trace) {
    const std::size_t start = trace.size() * 9 / 10;
    return (trace.back() - trace[start]) / static_cast<double>(trace.size() - start);
  };
  CHECK(state.utility_queue / 10000.0 < 1e-3);
  CHECK(state.info_queue / 10000.0 < 1e-3);
  CHECK(std::abs(slope(utility_trace)) < 1e-3);
  CHECK(std::abs(slope(info_trace)) < 1e-3);
}
