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

#include <string>
#include <utility>
#include <vector>

#include "flsched/config.hpp"
#include "flsched/scheduler.hpp"
#include "flsched/types.hpp"

namespace flsched {

/// Everything observable about one training round.
struct RoundRecord {
  long round = 0;
  BoolArray scheduled;
  std::vector<std::pair<int, int>> allocations;  // (client, rb)
  std::vector<double> predicted_sinr;            // per allocation
  std::vector<double> realized_sinr;             // per allocation
  int outages = 0;
  double utility_queue = 0.0;
  double info_queue = 0.0;
  double utility_target = 0.0;
  double info_target = 0.0;
  double objective_value = 0.0;
  double info_harvested = 0.0;
  double gap_bound = 0.0;
  double dual_value = 0.0;
  double dual_gap = 0.0;
  double accuracy = 0.0;
  double epsilon = 0.0;  // centralized accuracy minus current accuracy
  double consistency_residual = 0.0;
};

struct RunSummary {
  std::string method;
  std::string csi_mode;
  std::uint64_t seed = 0;
  long rounds = 0;
  double centralized_accuracy = 0.0;
  double centralized_primal = 0.0;
  double centralized_dual = 0.0;
  double final_accuracy = 0.0;
  double final_epsilon = 0.0;
  double final_dual = 0.0;
  double final_dual_gap = 0.0;
  double final_gap_bound = 0.0;
  double final_utility_queue = 0.0;
  double final_info_queue = 0.0;
  std::vector<double> per_client_accuracy;
  double per_client_accuracy_mean = 0.0;
  double per_client_accuracy_variance = 0.0;
  long outages_total = 0;
  long scheduled_client_rounds = 0;
  Vector model;
};

struct RunResult {
  std::vector<RoundRecord> records;
  RunSummary summary;
};

/// Runs one seeded experiment: dataset creation and partitioning, the
/// centralized reference, then `horizon` rounds of local updates, channel
/// prediction, scheduling, upload and aggregation. Deterministic given the
/// configuration and seed.
RunResult run_experiment(const ExperimentConfig& cfg);

/// Shortest round-trip decimal text for a double.
std::string format_double(double value);

/// Serializes the per-round records (header row, comma separated, '\n'
/// line endings, round-trip float formatting).
std::string records_to_csv(const std::vector<RoundRecord>& records);

std::string summary_to_json(const RunSummary& summary, const ExperimentConfig& cfg);

/// File stem embedding method, seed and key sizes, e.g. QAW_s7_K10_B6_T100.
std::string run_file_stem(const ExperimentConfig& cfg);

/// Runs `cfg.replications` seeded replications (seed, seed+1, ...) and writes
/// <stem>.csv / <stem>.summary.json per replication into out_dir (when
/// non-empty). Replications execute in parallel and results are returned in
/// replication order.
std::vector<RunResult> run_replications(const ExperimentConfig& cfg, const std::string& out_dir);

enum class SweepAxis { zipf_exponent, min_shard, rb_count, method };

SweepAxis parse_sweep_axis(const std::string& name);

struct SweepCell {
  std::string axis;
  std::string value;
  std::string method;
  std::string csi_mode;
  double actual_zipf_exponent = 0.0;
  int replications = 0;
  double epsilon_mean = 0.0;
  double epsilon_variance = 0.0;
  double accuracy_mean = 0.0;
  double dual_gap_mean = 0.0;
  double gap_bound_mean = 0.0;
  double fairness_variance_mean = 0.0;
};

/// Replicated runs for every value of the sweep axis; per-run outputs land in
/// out_dir, and the returned table is also written there as sweep.csv.
std::vector<SweepCell> run_sweep(const ExperimentConfig& base, SweepAxis axis,
                                 const std::vector<std::string>& values, int replications,
                                 const std::string& out_dir);

std::string sweep_to_csv(const std::vector<SweepCell>& cells);

}  // namespace flsched
