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

#include "flsched/harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "flsched/dual.hpp"
#include "flsched/rng.hpp"

namespace flsched {

namespace {

struct SplitData {
  PartitionedDataset train;
  Matrix test_features;  // pooled held-out set, dimension x N_test
  Vector test_labels;
  std::vector<std::vector<int>> test_shards;  // per-client indices into the pooled set
};

// Builds the training partition plus a per-client held-out set. Both splits
// are sliced from one generator call so they share the same cluster means.
// Test shard sizes follow the training shard sizes so that small clients are
// evaluated on few samples, as they would be in practice.
SplitData build_data(const ExperimentConfig& cfg, std::mt19937_64& data_rng,
                     std::mt19937_64& partition_rng) {
  SplitData split;
  if (cfg.dataset.source == "csv") {
    // No generator to draw from: evaluate on the training shards themselves.
    Dataset train = load_dataset_csv(cfg.dataset.csv_path);
    split.train = zipf_partition(std::move(train), cfg.channel.num_clients,
                                 cfg.dataset.zipf_exponent, partition_rng);
    split.test_features = split.train.features;
    split.test_labels = split.train.labels;
    split.test_shards = split.train.shards;
    return split;
  }

  const int num_train = cfg.dataset.num_samples;
  const std::vector<int> train_sizes =
      zipf_shard_sizes(num_train, cfg.channel.num_clients, cfg.dataset.zipf_exponent);
  std::vector<int> test_sizes(train_sizes.size());
  int total_test = 0;
  for (std::size_t k = 0; k < train_sizes.size(); ++k) {
    const int want = static_cast<int>(std::llround(cfg.dataset.test_fraction * train_sizes[k]));
    test_sizes[k] = std::max(cfg.dataset.min_test_per_client, want);
    total_test += test_sizes[k];
  }

  const Dataset pooled = make_synthetic(num_train + total_test, cfg.dataset.dimension,
                                        cfg.dataset.num_classes, cfg.dataset.cluster_separation,
                                        data_rng, cfg.dataset.nuisance_dims,
                                        cfg.dataset.nuisance_scale);
  Dataset train;
  train.features = pooled.features.leftCols(num_train);
  train.labels = pooled.labels.head(num_train);
  split.train = zipf_partition(std::move(train), cfg.channel.num_clients,
                               cfg.dataset.zipf_exponent, partition_rng);
  split.test_features = pooled.features.rightCols(total_test);
  split.test_labels = pooled.labels.tail(total_test);
  split.test_shards.resize(train_sizes.size());
  int cursor = 0;
  for (std::size_t k = 0; k < train_sizes.size(); ++k) {
    split.test_shards[k].resize(test_sizes[k]);
    std::iota(split.test_shards[k].begin(), split.test_shards[k].end(), cursor);
    cursor += test_sizes[k];
  }
  return split;
}

Matrix gather_columns(const Matrix& source, const std::vector<int>& indices) {
  Matrix out(source.rows(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) out.col(j) = source.col(indices[j]);
  return out;
}

Vector gather(const Vector& source, const std::vector<int>& indices) {
  Vector out(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) out[j] = source[indices[j]];
  return out;
}

double variance(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= values.size();
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return var / values.size();
}

void run_parallel(int count, const std::function<void(int)>& body) {
  const int workers =
      std::max(1, std::min<int>(count, static_cast<int>(std::thread::hardware_concurrency())));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& raw_cfg) {
  ExperimentConfig cfg = raw_cfg;
  cfg.finalize();

  std::mt19937_64 data_rng = make_stream(cfg.seed, "data");
  std::mt19937_64 partition_rng = make_stream(cfg.seed, "partition");
  std::mt19937_64 channel_rng = make_stream(cfg.seed, "channel");
  std::mt19937_64 scheduler_rng = make_stream(cfg.seed, "scheduler");
  std::mt19937_64 solver_rng = make_stream(cfg.seed, "solver");
  std::mt19937_64 centralized_rng = make_stream(cfg.seed, "centralized");

  const SplitData data = build_data(cfg, data_rng, partition_rng);
  const PartitionedDataset& train = data.train;
  const int num_clients = train.num_clients();
  const auto loss = make_loss(cfg.training.loss, cfg.training.regularization);

  const CentralizedResult central =
      centralized_train(train.features, train.labels, *loss, cfg.training.centralized_tolerance,
                        cfg.training.centralized_max_epochs, centralized_rng);
  const double centralized_accuracy =
      classification_accuracy(data.test_features, data.test_labels, central.model);

  // Under measured CSI one RB is permanently occupied by channel sounding, so
  // the scheduler works with one fewer; prediction frees it. The random
  // baseline never looks at the channel at all: it schedules blindly over
  // every RB and its transmissions succeed only when the realized SINR
  // clears the target.
  const bool blind = cfg.method == Method::rand;
  const bool predicted = cfg.csi_mode == CsiMode::gpr && !blind;
  const int usable_rbs = (cfg.csi_mode == CsiMode::perfect && !blind)
                             ? cfg.channel.num_rbs - 1
                             : cfg.channel.num_rbs;

  ChannelState channel = make_channel(cfg.channel, channel_rng);
  GprBank bank;
  if (predicted && usable_rbs > 0) {
    bank = GprBank(num_clients, usable_rbs, cfg.gpr.window_capacity);
    // One pilot sweep before training starts; without a first observation the
    // zero-mean prior would keep every pair below the SINR target forever.
    for (int k = 0; k < num_clients; ++k)
      for (int b = 0; b < usable_rbs; ++b)
        bank.record(k, b, 0, channel.gains(k, b));
  }

  // The matching tie-break prefers low row indices, and Zipf shard sizes
  // decrease with the client index; presenting the clients to the scheduler
  // in that order would silently turn size ties into size preferences. A
  // seeded per-run relabeling keeps tie-breaking deterministic but
  // independent of the shard-size ranking.
  std::vector<int> row_to_client(num_clients);
  std::iota(row_to_client.begin(), row_to_client.end(), 0);
  {
    std::mt19937_64 relabel_rng = make_stream(cfg.seed, "relabel");
    shuffle_inplace(row_to_client, relabel_rng);
  }
  const std::vector<int> data_shard_sizes = train.shard_sizes();

  SchedulerConfig sched_cfg;
  sched_cfg.horizon = cfg.horizon;
  sched_cfg.tradeoff = cfg.scheduler.tradeoff;
  sched_cfg.exploration_weight = cfg.scheduler.exploration_weight;
  sched_cfg.info_cap = cfg.scheduler.info_cap;
  sched_cfg.local_accuracy = cfg.training.local_accuracy;
  sched_cfg.total_data = train.num_samples();
  sched_cfg.shard_sizes.resize(num_clients);
  for (int r = 0; r < num_clients; ++r)
    sched_cfg.shard_sizes[r] = data_shard_sizes[row_to_client[r]];
  sched_cfg.num_rbs = usable_rbs;

  DualState dual = make_dual_state(train.num_samples(), train.dimension(),
                                   cfg.training.local_accuracy, cfg.training.subproblem_param);
  SchedulerState sched;

  RunResult result;
  result.records.reserve(static_cast<std::size_t>(cfg.horizon));
  double scheduled_mass = 0.0;  // sum over rounds of sum_k (D_k/D) s_k
  long outages_total = 0;
  long scheduled_client_rounds = 0;

  for (long t = 1; t <= cfg.horizon; ++t) {
    // 1. Every client solves its local subproblem against the last broadcast.
    std::vector<LocalUpdate> updates;
    updates.reserve(num_clients);
    for (int k = 0; k < num_clients; ++k)
      updates.push_back(
          local_dual_update(train, k, dual, *loss, cfg.training.local_passes, solver_rng));

    // 2. Channel evolves; the scheduler sees either the truth or predictions.
    channel = step_channel(channel, cfg.channel, channel_rng);
    ComplexMatrix seen(num_clients, usable_rbs);
    Matrix info = Matrix::Zero(num_clients, std::max(usable_rbs, 0));
    if (predicted && usable_rbs > 0) {
      const GprGrid grid = posterior_grid(bank, static_cast<double>(t), cfg.gpr);
      seen = grid.predicted;
      info = grid.information;
    } else {
      for (int k = 0; k < num_clients; ++k)
        for (int b = 0; b < usable_rbs; ++b) seen(k, b) = channel.gains(k, b);
    }
    BoolMatrix feasibility = BoolMatrix::Constant(num_clients, std::max(usable_rbs, 0), false);
    for (int k = 0; k < num_clients; ++k)
      for (int b = 0; b < usable_rbs; ++b)
        feasibility(k, b) = blind || feasible(seen(k, b), cfg.channel);

    // Scheduler-space views with relabeled rows.
    BoolMatrix feas_rows(num_clients, feasibility.cols());
    Matrix info_rows(num_clients, info.cols());
    for (int r = 0; r < num_clients; ++r) {
      feas_rows.row(r) = feasibility.row(row_to_client[r]);
      info_rows.row(r) = info.row(row_to_client[r]);
    }

    // 3.-4. Auxiliary targets and the per-slot assignment.
    ScheduleDecision picked;
    switch (cfg.method) {
      case Method::qaw:
      case Method::qaw_gpr:
        picked = dpp_schedule(sched, sched_cfg, feas_rows, info_rows);
        break;
      case Method::qunaw:
        picked = qunaw_schedule(sched, sched_cfg, feas_rows, info_rows);
        break;
      case Method::rand:
        picked = rand_schedule(sched_cfg, feas_rows, scheduler_rng);
        break;
      case Method::ideal:
        picked = ideal_schedule(num_clients, std::max(usable_rbs, 0));
        break;
    }

    // Map the decision back to data-client indexing for everything downstream.
    ScheduleDecision decision = picked;
    for (int r = 0; r < num_clients; ++r) {
      decision.scheduled[row_to_client[r]] = picked.scheduled[r];
      decision.allocation.row(row_to_client[r]) = picked.allocation.row(r);
    }

    RoundRecord record;
    record.round = t;
    record.scheduled = decision.scheduled;
    record.utility_target = decision.utility_target;
    record.info_target = decision.info_target;
    record.objective_value = decision.objective_value;

    // 5. Uploads over the air: log predicted vs realized link quality.
    BoolArray delivered = decision.scheduled;
    for (int k = 0; k < num_clients; ++k) {
      for (int b = 0; b < usable_rbs; ++b) {
        if (!decision.allocation(k, b)) continue;
        const double predicted = sinr(seen(k, b), 0.0, cfg.channel);
        const double realized = sinr(channel.gains(k, b), 0.0, cfg.channel);
        record.allocations.emplace_back(k, b);
        record.predicted_sinr.push_back(predicted);
        record.realized_sinr.push_back(realized);
        if (realized < cfg.channel.target_sinr) {
          ++record.outages;
          // Blind scheduling has no prediction to honor; a missed target is
          // simply a failed upload.
          if (cfg.strict_outage || blind) delivered[k] = false;
        }
      }
    }
    outages_total += record.outages;

    // 6. Queue updates for the queue-driven methods, then aggregation. The
    // queues live in scheduler space, so they see the relabeled decision.
    const bool queue_driven = cfg.method == Method::qaw || cfg.method == Method::qaw_gpr ||
                              cfg.method == Method::qunaw;
    record.info_harvested = harvested_information(decision.allocation, info);
    if (queue_driven) sched = queue_update(sched, picked, info_rows, sched_cfg);
    record.utility_queue = sched.utility_queue;
    record.info_queue = sched.info_queue;

    dual = aggregate(std::move(dual), updates, delivered, train);
    record.consistency_residual = dual_consistency_residual(dual, train, *loss);

    // 7. Allocated pairs double as channel samples for future predictions.
    if (predicted && usable_rbs > 0)
      for (const auto& [k, b] : record.allocations) bank.record(k, b, t, channel.gains(k, b));

    for (Eigen::Index k = 0; k < decision.scheduled.size(); ++k) {
      if (decision.scheduled[k]) {
        scheduled_mass += static_cast<double>(data_shard_sizes[k]) / sched_cfg.total_data;
        ++scheduled_client_rounds;
      }
    }

    record.gap_bound = gap_bound_value(scheduled_mass, cfg.training.local_accuracy, cfg.horizon,
                                       train.num_samples());
    record.dual_value = dual_objective(dual, train, *loss);
    record.dual_gap = central.dual - record.dual_value;
    record.accuracy = classification_accuracy(data.test_features, data.test_labels, dual.model);
    record.epsilon = centralized_accuracy - record.accuracy;
    result.records.push_back(std::move(record));
  }

  RunSummary& summary = result.summary;
  summary.method = to_string(cfg.method);
  summary.csi_mode = to_string(cfg.csi_mode);
  summary.seed = cfg.seed;
  summary.rounds = cfg.horizon;
  summary.centralized_accuracy = centralized_accuracy;
  summary.centralized_primal = central.primal;
  summary.centralized_dual = central.dual;
  summary.final_accuracy =
      classification_accuracy(data.test_features, data.test_labels, dual.model);
  summary.final_epsilon = centralized_accuracy - summary.final_accuracy;
  summary.final_dual = dual_objective(dual, train, *loss);
  summary.final_dual_gap = central.dual - summary.final_dual;
  summary.final_gap_bound = gap_bound_value(scheduled_mass, cfg.training.local_accuracy,
                                            cfg.horizon, train.num_samples());
  summary.final_utility_queue = sched.utility_queue;
  summary.final_info_queue = sched.info_queue;
  summary.outages_total = outages_total;
  summary.scheduled_client_rounds = scheduled_client_rounds;
  summary.model = dual.model;
  // Fairness is judged on each client's own training shard: a shard whose
  // dual coordinates were never scheduled stays at generalization level
  // while trained shards are fit, so the spread tracks scheduling coverage.
  summary.per_client_accuracy.resize(num_clients);
  for (int k = 0; k < num_clients; ++k) {
    const Matrix features = gather_columns(train.features, train.shards[k]);
    const Vector labels = gather(train.labels, train.shards[k]);
    summary.per_client_accuracy[k] = classification_accuracy(features, labels, dual.model);
  }
  double mean = 0.0;
  for (double a : summary.per_client_accuracy) mean += a;
  summary.per_client_accuracy_mean = num_clients ? mean / num_clients : 0.0;
  summary.per_client_accuracy_variance = variance(summary.per_client_accuracy);
  return result;
}

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buffer, ptr);
}

namespace {

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace

std::string records_to_csv(const std::vector<RoundRecord>& records) {
  std::string out =
      "round,num_scheduled,scheduled,allocations,utility_queue,info_queue,utility_target,"
      "info_target,objective_value,info_harvested,outages,predicted_sinr,realized_sinr,"
      "dual_value,dual_gap,gap_bound,accuracy,epsilon,consistency_residual\n";
  for (const RoundRecord& r : records) {
    out += std::to_string(r.round);
    out += ',';
    out += std::to_string(static_cast<long>(r.scheduled.count()));
    out += ',';
    for (Eigen::Index k = 0; k < r.scheduled.size(); ++k) out += r.scheduled[k] ? '1' : '0';
    out += ',';
    for (std::size_t i = 0; i < r.allocations.size(); ++i) {
      if (i) out += ';';
      out += std::to_string(r.allocations[i].first);
      out += ':';
      out += std::to_string(r.allocations[i].second);
    }
    out += ',';
    out += format_double(r.utility_queue);
    out += ',';
    out += format_double(r.info_queue);
    out += ',';
    out += format_double(r.utility_target);
    out += ',';
    out += format_double(r.info_target);
    out += ',';
    out += format_double(r.objective_value);
    out += ',';
    out += format_double(r.info_harvested);
    out += ',';
    out += std::to_string(r.outages);
    out += ',';
    out += join_doubles(r.predicted_sinr);
    out += ',';
    out += join_doubles(r.realized_sinr);
    out += ',';
    out += format_double(r.dual_value);
    out += ',';
    out += format_double(r.dual_gap);
    out += ',';
    out += format_double(r.gap_bound);
    out += ',';
    out += format_double(r.accuracy);
    out += ',';
    out += format_double(r.epsilon);
    out += ',';
    out += format_double(r.consistency_residual);
    out += '\n';
  }
  return out;
}

std::string summary_to_json(const RunSummary& summary, const ExperimentConfig& cfg) {
  nlohmann::json root;
  root["method"] = summary.method;
  root["csi_mode"] = summary.csi_mode;
  root["seed"] = summary.seed;
  root["rounds"] = summary.rounds;
  root["centralized"] = {{"accuracy", summary.centralized_accuracy},
                         {"primal", summary.centralized_primal},
                         {"dual", summary.centralized_dual}};
  root["final"] = {{"accuracy", summary.final_accuracy},
                   {"epsilon", summary.final_epsilon},
                   {"dual", summary.final_dual},
                   {"dual_gap", summary.final_dual_gap},
                   {"gap_bound", summary.final_gap_bound},
                   {"utility_queue", summary.final_utility_queue},
                   {"info_queue", summary.final_info_queue}};
  root["fairness"] = {{"per_client_accuracy", summary.per_client_accuracy},
                      {"mean", summary.per_client_accuracy_mean},
                      {"variance", summary.per_client_accuracy_variance}};
  root["outages_total"] = summary.outages_total;
  root["scheduled_client_rounds"] = summary.scheduled_client_rounds;
  root["config"] = nlohmann::json::parse(config_to_json(cfg));
  return root.dump(2);
}

std::string run_file_stem(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << to_string(cfg.method) << "_s" << cfg.seed << "_K" << cfg.channel.num_clients << "_B"
      << cfg.channel.num_rbs << "_T" << cfg.horizon;
  return out.str();
}

std::vector<RunResult> run_replications(const ExperimentConfig& cfg, const std::string& out_dir) {
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  std::vector<RunResult> results(cfg.replications);
  std::vector<ExperimentConfig> configs(cfg.replications, cfg);
  for (int i = 0; i < cfg.replications; ++i) {
    configs[i].seed = cfg.seed + static_cast<std::uint64_t>(i);
    configs[i].replications = 1;
  }
  run_parallel(cfg.replications, [&](int i) {
    results[i] = run_experiment(configs[i]);
    if (!out_dir.empty()) {
      const std::filesystem::path base =
          std::filesystem::path(out_dir) / run_file_stem(configs[i]);
      std::ofstream csv(base.string() + ".csv", std::ios::binary);
      csv << records_to_csv(results[i].records);
      std::ofstream json_out(base.string() + ".summary.json", std::ios::binary);
      json_out << summary_to_json(results[i].summary, configs[i]) << '\n';
    }
  });
  return results;
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "zipf_exponent") return SweepAxis::zipf_exponent;
  if (name == "min_shard") return SweepAxis::min_shard;
  if (name == "rb_count") return SweepAxis::rb_count;
  if (name == "method") return SweepAxis::method;
  throw std::invalid_argument("sweep: unknown axis '" + name + "'");
}

std::vector<SweepCell> run_sweep(const ExperimentConfig& base, SweepAxis axis,
                                 const std::vector<std::string>& values, int replications,
                                 const std::string& out_dir) {
  if (values.empty()) throw std::invalid_argument("sweep: no values given");
  if (replications < 1) throw std::invalid_argument("sweep: replications must be >= 1");

  std::vector<SweepCell> cells;
  for (const std::string& value : values) {
    ExperimentConfig cfg = base;
    cfg.replications = replications;
    switch (axis) {
      case SweepAxis::zipf_exponent:
        cfg.dataset.zipf_exponent = std::stod(value);
        break;
      case SweepAxis::min_shard:
        cfg.dataset.zipf_exponent = sigma_for_min_shard(
            cfg.dataset.num_samples, cfg.channel.num_clients, std::stoi(value));
        break;
      case SweepAxis::rb_count:
        cfg.channel.num_rbs = std::stoi(value);
        cfg.scheduler.info_cap = 0.0;  // re-derive from the new RB count
        break;
      case SweepAxis::method:
        cfg.method = parse_method(value);
        cfg.csi_mode_explicit = false;  // follow the method's natural mode
        break;
    }
    cfg.finalize();

    const std::string cell_dir =
        out_dir.empty() ? "" : (std::filesystem::path(out_dir) / ("cell_" + value)).string();
    const std::vector<RunResult> runs = run_replications(cfg, cell_dir);

    SweepCell cell;
    switch (axis) {
      case SweepAxis::zipf_exponent: cell.axis = "zipf_exponent"; break;
      case SweepAxis::min_shard: cell.axis = "min_shard"; break;
      case SweepAxis::rb_count: cell.axis = "rb_count"; break;
      case SweepAxis::method: cell.axis = "method"; break;
    }
    cell.value = value;
    cell.method = to_string(cfg.method);
    cell.csi_mode = to_string(cfg.csi_mode);
    cell.actual_zipf_exponent = cfg.dataset.zipf_exponent;
    cell.replications = replications;
    std::vector<double> epsilons;
    for (const RunResult& run : runs) {
      epsilons.push_back(run.summary.final_epsilon);
      cell.accuracy_mean += run.summary.final_accuracy;
      cell.dual_gap_mean += run.summary.final_dual_gap;
      cell.gap_bound_mean += run.summary.final_gap_bound;
      cell.fairness_variance_mean += run.summary.per_client_accuracy_variance;
    }
    const double n = static_cast<double>(runs.size());
    for (double e : epsilons) cell.epsilon_mean += e;
    cell.epsilon_mean /= n;
    cell.epsilon_variance = variance(epsilons);
    cell.accuracy_mean /= n;
    cell.dual_gap_mean /= n;
    cell.gap_bound_mean /= n;
    cell.fairness_variance_mean /= n;
    cells.push_back(std::move(cell));
  }

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(std::filesystem::path(out_dir) / "sweep.csv", std::ios::binary);
    out << sweep_to_csv(cells);
  }
  return cells;
}

std::string sweep_to_csv(const std::vector<SweepCell>& cells) {
  std::string out =
      "axis,value,method,csi_mode,zipf_exponent,replications,epsilon_mean,epsilon_variance,"
      "accuracy_mean,dual_gap_mean,gap_bound_mean,fairness_variance_mean\n";
  for (const SweepCell& c : cells) {
    out += c.axis + ',' + c.value + ',' + c.method + ',' + c.csi_mode + ',';
    out += format_double(c.actual_zipf_exponent);
    out += ',';
    out += std::to_string(c.replications);
    out += ',';
    out += format_double(c.epsilon_mean);
    out += ',';
    out += format_double(c.epsilon_variance);
    out += ',';
    out += format_double(c.accuracy_mean);
    out += ',';
    out += format_double(c.dual_gap_mean);
    out += ',';
    out += format_double(c.gap_bound_mean);
    out += ',';
    out += format_double(c.fairness_variance_mean);
    out += '\n';
  }
  return out;
}

}  // namespace flsched
