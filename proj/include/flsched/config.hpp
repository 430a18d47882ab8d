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

#include <cstdint>
#include <string>

#include "flsched/channel.hpp"
#include "flsched/gpr.hpp"

namespace flsched {

enum class Method { qaw, qaw_gpr, qunaw, rand, ideal };

std::string to_string(Method method);
std::string to_string(CsiMode mode);
Method parse_method(const std::string& name);
CsiMode parse_csi_mode(const std::string& name);

struct DatasetConfig {
  std::string source = "synthetic";  // "synthetic" or "csv"
  std::string csv_path;
  int num_samples = 600;  // training samples
  int dimension = 10;
  int num_classes = 2;
  double cluster_separation = 1.6;
  int nuisance_dims = 0;        // leading class-free feature dimensions
  double nuisance_scale = 1.0;  // their noise scale
  double zipf_exponent = 1.017;
  double test_fraction = 0.25;    // per-client held-out share, drawn separately
  int min_test_per_client = 8;
};

struct TrainingConfig {
  std::string loss = "ridge";      // "ridge" or "logistic"
  double regularization = 1.0;
  double local_accuracy = 0.7;
  double subproblem_param = 0.2;
  int local_passes = 2;
  double centralized_tolerance = 1e-9;
  long centralized_max_epochs = 200000;
};

struct SchedulerParams {
  double tradeoff = 1.0;
  double exploration_weight = 1.0;
  double info_cap = 0.0;  // 0 selects the default of one unit per RB
};

struct ExperimentConfig {
  Method method = Method::qaw;
  CsiMode csi_mode = CsiMode::perfect;
  bool csi_mode_explicit = false;  // set when the config/CLI pinned the mode
  std::uint64_t seed = 1;
  int replications = 1;
  long horizon = 100;
  bool strict_outage = false;  // drop updates whose realized SINR missed the target

  ChannelConfig channel;
  GprHyperParams gpr;
  DatasetConfig dataset;
  TrainingConfig training;
  SchedulerParams scheduler;

  /// Applies method-implied CSI defaults and cross-checks all sections.
  /// Throws std::invalid_argument on any inconsistency.
  void finalize();
};

/// Parses the flat per-section JSON config; unknown sections or keys are
/// rejected. Missing keys keep their defaults.
ExperimentConfig load_config_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

/// Round-trips the effective configuration (for run summaries).
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace flsched
