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

#include "flsched/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace flsched {

namespace {

using nlohmann::json;

void reject_unknown(const json& section, const std::string& name,
                    const std::set<std::string>& known) {
  for (const auto& [key, _] : section.items()) {
    if (!known.contains(key))
      throw std::invalid_argument("config: unknown key '" + name + "." + key + "'");
  }
}

template <typename T>
void read(const json& section, const char* key, T& out) {
  if (section.contains(key)) out = section.at(key).get<T>();
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::qaw: return "QAW";
    case Method::qaw_gpr: return "QAW-GPR";
    case Method::qunaw: return "QUNAW";
    case Method::rand: return "RAND";
    case Method::ideal: return "IDEAL";
  }
  return "?";
}

std::string to_string(CsiMode mode) { return mode == CsiMode::perfect ? "perfect" : "gpr"; }

Method parse_method(const std::string& name) {
  if (name == "QAW") return Method::qaw;
  if (name == "QAW-GPR") return Method::qaw_gpr;
  if (name == "QUNAW") return Method::qunaw;
  if (name == "RAND") return Method::rand;
  if (name == "IDEAL") return Method::ideal;
  throw std::invalid_argument("config: unknown method '" + name + "'");
}

CsiMode parse_csi_mode(const std::string& name) {
  if (name == "perfect") return CsiMode::perfect;
  if (name == "gpr") return CsiMode::gpr;
  throw std::invalid_argument("config: unknown csi_mode '" + name + "'");
}

void ExperimentConfig::finalize() {
  if (!csi_mode_explicit) {
    // GPR prediction is part of the QAW-GPR design; the other methods run on
    // measured channels unless the config says otherwise.
    csi_mode = (method == Method::qaw_gpr) ? CsiMode::gpr : CsiMode::perfect;
  }
  if (method == Method::qaw_gpr && csi_mode != CsiMode::gpr)
    throw std::invalid_argument("config: QAW-GPR requires csi_mode=gpr");
  if ((method == Method::qaw || method == Method::qunaw) && csi_mode != CsiMode::perfect)
    throw std::invalid_argument("config: QAW and QUNAW require csi_mode=perfect");
  if (replications < 1) throw std::invalid_argument("config: replications must be >= 1");
  if (horizon < 0) throw std::invalid_argument("config: horizon must be >= 0");
  if (dataset.num_samples < channel.num_clients)
    throw std::invalid_argument("config: need at least one sample per client");
  if (dataset.test_fraction < 0.0 || dataset.test_fraction >= 1.0)
    throw std::invalid_argument("config: test_fraction must lie in [0, 1)");
  if (dataset.source != "synthetic" && dataset.source != "csv")
    throw std::invalid_argument("config: dataset.source must be 'synthetic' or 'csv'");
  if (dataset.source == "csv" && dataset.csv_path.empty())
    throw std::invalid_argument("config: dataset.csv_path is required for csv source");
  if (training.local_passes < 0)
    throw std::invalid_argument("config: local_passes must be >= 0");
  if (channel.mean_gain == 0.0)
    channel.mean_gain =
        calibrated_mean_gain(channel.tx_power, channel.noise_power, channel.target_sinr);
  channel.validate();
  gpr.validate();
  if (scheduler.info_cap == 0.0) scheduler.info_cap = static_cast<double>(channel.num_rbs);
  if (scheduler.info_cap < 0.0 || scheduler.tradeoff < 0.0 || scheduler.exploration_weight < 0.0)
    throw std::invalid_argument("config: scheduler weights must be >= 0");
}

ExperimentConfig load_config_json(const std::string& text) {
  const json root = json::parse(text);
  if (!root.is_object()) throw std::invalid_argument("config: top level must be an object");
  reject_unknown(root, "", {"experiment", "channel", "gpr", "dataset", "training", "scheduler"});

  ExperimentConfig cfg;
  if (root.contains("experiment")) {
    const json& s = root.at("experiment");
    reject_unknown(s, "experiment",
                   {"method", "csi_mode", "seed", "replications", "horizon", "strict_outage"});
    if (s.contains("method")) cfg.method = parse_method(s.at("method").get<std::string>());
    if (s.contains("csi_mode")) {
      cfg.csi_mode = parse_csi_mode(s.at("csi_mode").get<std::string>());
      cfg.csi_mode_explicit = true;
    }
    read(s, "seed", cfg.seed);
    read(s, "replications", cfg.replications);
    read(s, "horizon", cfg.horizon);
    read(s, "strict_outage", cfg.strict_outage);
  }
  if (root.contains("channel")) {
    const json& s = root.at("channel");
    reject_unknown(s, "channel",
                   {"num_clients", "num_rbs", "tx_power", "noise_power", "target_sinr",
                    "correlation", "mean_gain", "fading", "periodic_amplitude",
                    "periodic_period"});
    read(s, "num_clients", cfg.channel.num_clients);
    read(s, "num_rbs", cfg.channel.num_rbs);
    read(s, "tx_power", cfg.channel.tx_power);
    read(s, "noise_power", cfg.channel.noise_power);
    read(s, "target_sinr", cfg.channel.target_sinr);
    read(s, "correlation", cfg.channel.correlation);
    read(s, "mean_gain", cfg.channel.mean_gain);
    if (s.contains("fading")) {
      const std::string fading = s.at("fading").get<std::string>();
      if (fading == "gauss_markov") cfg.channel.fading = FadingModel::gauss_markov;
      else if (fading == "periodic") cfg.channel.fading = FadingModel::periodic;
      else throw std::invalid_argument("config: unknown fading model '" + fading + "'");
    }
    read(s, "periodic_amplitude", cfg.channel.periodic_amplitude);
    read(s, "periodic_period", cfg.channel.periodic_period);
  }
  if (root.contains("gpr")) {
    const json& s = root.at("gpr");
    reject_unknown(s, "gpr", {"length_scale", "period", "jitter", "window_capacity"});
    read(s, "length_scale", cfg.gpr.length_scale);
    read(s, "period", cfg.gpr.period);
    read(s, "jitter", cfg.gpr.jitter);
    read(s, "window_capacity", cfg.gpr.window_capacity);
  }
  if (root.contains("dataset")) {
    const json& s = root.at("dataset");
    reject_unknown(s, "dataset",
                   {"source", "csv_path", "num_samples", "dimension", "num_classes",
                    "cluster_separation", "nuisance_dims", "nuisance_scale", "zipf_exponent",
                    "test_fraction", "min_test_per_client"});
    read(s, "source", cfg.dataset.source);
    read(s, "csv_path", cfg.dataset.csv_path);
    read(s, "num_samples", cfg.dataset.num_samples);
    read(s, "dimension", cfg.dataset.dimension);
    read(s, "num_classes", cfg.dataset.num_classes);
    read(s, "cluster_separation", cfg.dataset.cluster_separation);
    read(s, "nuisance_dims", cfg.dataset.nuisance_dims);
    read(s, "nuisance_scale", cfg.dataset.nuisance_scale);
    read(s, "zipf_exponent", cfg.dataset.zipf_exponent);
    read(s, "test_fraction", cfg.dataset.test_fraction);
    read(s, "min_test_per_client", cfg.dataset.min_test_per_client);
  }
  if (root.contains("training")) {
    const json& s = root.at("training");
    reject_unknown(s, "training",
                   {"loss", "regularization", "local_accuracy", "subproblem_param",
                    "local_passes", "centralized_tolerance", "centralized_max_epochs"});
    read(s, "loss", cfg.training.loss);
    read(s, "regularization", cfg.training.regularization);
    read(s, "local_accuracy", cfg.training.local_accuracy);
    read(s, "subproblem_param", cfg.training.subproblem_param);
    read(s, "local_passes", cfg.training.local_passes);
    read(s, "centralized_tolerance", cfg.training.centralized_tolerance);
    read(s, "centralized_max_epochs", cfg.training.centralized_max_epochs);
  }
  if (root.contains("scheduler")) {
    const json& s = root.at("scheduler");
    reject_unknown(s, "scheduler", {"tradeoff", "exploration_weight", "info_cap"});
    read(s, "tradeoff", cfg.scheduler.tradeoff);
    read(s, "exploration_weight", cfg.scheduler.exploration_weight);
    read(s, "info_cap", cfg.scheduler.info_cap);
  }
  cfg.finalize();
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_config_json(buffer.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json root;
  root["experiment"] = {{"method", to_string(cfg.method)},
                        {"csi_mode", to_string(cfg.csi_mode)},
                        {"seed", cfg.seed},
                        {"replications", cfg.replications},
                        {"horizon", cfg.horizon},
                        {"strict_outage", cfg.strict_outage}};
  root["channel"] = {{"num_clients", cfg.channel.num_clients},
                     {"num_rbs", cfg.channel.num_rbs},
                     {"tx_power", cfg.channel.tx_power},
                     {"noise_power", cfg.channel.noise_power},
                     {"target_sinr", cfg.channel.target_sinr},
                     {"correlation", cfg.channel.correlation},
                     {"mean_gain", cfg.channel.mean_gain},
                     {"fading", cfg.channel.fading == FadingModel::periodic ? "periodic"
                                                                            : "gauss_markov"},
                     {"periodic_amplitude", cfg.channel.periodic_amplitude},
                     {"periodic_period", cfg.channel.periodic_period}};
  root["gpr"] = {{"length_scale", cfg.gpr.length_scale},
                 {"period", cfg.gpr.period},
                 {"jitter", cfg.gpr.jitter},
                 {"window_capacity", cfg.gpr.window_capacity}};
  root["dataset"] = {{"source", cfg.dataset.source},
                     {"csv_path", cfg.dataset.csv_path},
                     {"num_samples", cfg.dataset.num_samples},
                     {"dimension", cfg.dataset.dimension},
                     {"num_classes", cfg.dataset.num_classes},
                     {"cluster_separation", cfg.dataset.cluster_separation},
                     {"nuisance_dims", cfg.dataset.nuisance_dims},
                     {"nuisance_scale", cfg.dataset.nuisance_scale},
                     {"zipf_exponent", cfg.dataset.zipf_exponent},
                     {"test_fraction", cfg.dataset.test_fraction},
                     {"min_test_per_client", cfg.dataset.min_test_per_client}};
  root["training"] = {{"loss", cfg.training.loss},
                      {"regularization", cfg.training.regularization},
                      {"local_accuracy", cfg.training.local_accuracy},
                      {"subproblem_param", cfg.training.subproblem_param},
                      {"local_passes", cfg.training.local_passes},
                      {"centralized_tolerance", cfg.training.centralized_tolerance},
                      {"centralized_max_epochs", cfg.training.centralized_max_epochs}};
  root["scheduler"] = {{"tradeoff", cfg.scheduler.tradeoff},
                       {"exploration_weight", cfg.scheduler.exploration_weight},
                       {"info_cap", cfg.scheduler.info_cap}};
  return root.dump(2);
}

}  // namespace flsched
