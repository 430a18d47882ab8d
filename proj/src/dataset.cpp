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

#include "flsched/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "flsched/rng.hpp"

namespace flsched {

std::vector<int> PartitionedDataset::shard_sizes() const {
  std::vector<int> sizes(shards.size());
  for (std::size_t k = 0; k < shards.size(); ++k) sizes[k] = static_cast<int>(shards[k].size());
  return sizes;
}

std::vector<int> zipf_shard_sizes(int num_samples, int num_clients, double exponent) {
  if (num_clients < 1) throw std::invalid_argument("zipf: num_clients must be >= 1");
  if (num_samples < num_clients)
    throw std::invalid_argument("zipf: need at least one sample per client");
  if (exponent < 0.0) throw std::invalid_argument("zipf: exponent must be >= 0");

  std::vector<double> raw(num_clients);
  double norm = 0.0;
  for (int k = 0; k < num_clients; ++k) {
    raw[k] = std::pow(static_cast<double>(k + 1), -exponent);
    norm += raw[k];
  }

  std::vector<int> sizes(num_clients);
  std::vector<std::pair<double, int>> remainders(num_clients);
  int assigned = 0;
  for (int k = 0; k < num_clients; ++k) {
    const double exact = num_samples * raw[k] / norm;
    sizes[k] = static_cast<int>(std::floor(exact));
    remainders[k] = {exact - sizes[k], k};
    assigned += sizes[k];
  }
  // Largest remainder first; ties go to the smaller client index, which keeps
  // the sizes non-increasing since the raw shares already are.
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int i = 0; i < num_samples - assigned; ++i) ++sizes[remainders[i].second];
  return sizes;
}

PartitionedDataset zipf_partition(Dataset data, int num_clients, double exponent,
                                  std::mt19937_64& rng) {
  const std::vector<int> sizes = zipf_shard_sizes(data.num_samples(), num_clients, exponent);

  std::vector<int> order(data.num_samples());
  std::iota(order.begin(), order.end(), 0);
  shuffle_inplace(order, rng);

  PartitionedDataset out;
  out.features = std::move(data.features);
  out.labels = std::move(data.labels);
  out.zipf_exponent = exponent;
  out.shards.resize(num_clients);
  int cursor = 0;
  for (int k = 0; k < num_clients; ++k) {
    out.shards[k].assign(order.begin() + cursor, order.begin() + cursor + sizes[k]);
    std::sort(out.shards[k].begin(), out.shards[k].end());
    cursor += sizes[k];
  }
  return out;
}

Dataset make_synthetic(int num_samples, int dimension, int num_classes, double separation,
                       std::mt19937_64& rng, int nuisance_dims, double nuisance_scale) {
  if (num_samples < 1 || dimension < 1 || num_classes < 1)
    throw std::invalid_argument("synthetic: sizes must be positive");
  if (nuisance_dims < 0 || nuisance_dims >= dimension)
    throw std::invalid_argument("synthetic: nuisance_dims must lie in [0, dimension)");
  if (nuisance_scale <= 0.0) throw std::invalid_argument("synthetic: nuisance_scale must be > 0");

  // Cluster means live in the signal subspace; the nuisance dimensions stay
  // zero-mean for every class.
  const int signal_dims = dimension - nuisance_dims;
  Matrix means = Matrix::Zero(dimension, num_classes);
  for (int c = 0; c < num_classes; ++c) {
    Vector direction(signal_dims);
    for (int j = 0; j < signal_dims; ++j) direction[j] = normal_sample(rng);
    const double len = direction.norm();
    if (len > 0.0)
      means.col(c).tail(signal_dims) = separation * direction / len;
  }

  Dataset data;
  data.features.resize(dimension, num_samples);
  data.labels.resize(num_samples);
  for (int i = 0; i < num_samples; ++i) {
    const int c = i % num_classes;  // balanced classes
    for (int j = 0; j < dimension; ++j) {
      const double scale = j < nuisance_dims ? nuisance_scale : 1.0;
      data.features(j, i) = means(j, c) + scale * normal_sample(rng);
    }
    data.labels[i] = (c < (num_classes + 1) / 2) ? 1.0 : -1.0;
  }
  return data;
}

Dataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("dataset: cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() < 2) throw std::runtime_error("dataset: row needs features and a label");
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("dataset: ragged csv row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("dataset: empty csv " + path);

  const int d = static_cast<int>(rows.front().size()) - 1;
  Dataset data;
  data.features.resize(d, static_cast<int>(rows.size()));
  data.labels.resize(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < d; ++j) data.features(j, static_cast<int>(i)) = rows[i][j];
    double label = rows[i][d];
    if (label == 0.0) label = -1.0;  // accept 0/1 class encodings
    data.labels[static_cast<int>(i)] = label;
  }
  return data;
}

double sigma_for_min_shard(int num_samples, int num_clients, int target_min) {
  if (num_clients < 2) return 0.0;
  const auto min_share = [&](double sigma) {
    double norm = 0.0;
    for (int k = 1; k <= num_clients; ++k) norm += std::pow(k, -sigma);
    return num_samples * std::pow(num_clients, -sigma) / norm;
  };
  if (target_min >= min_share(0.0)) return 0.0;
  double lo = 0.0, hi = 32.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (min_share(mid) > target_min ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace flsched
