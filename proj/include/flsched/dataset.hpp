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
#include <string>
#include <vector>

#include "flsched/types.hpp"

namespace flsched {

/// Samples are stored as columns: features is dimension x num_samples.
struct Dataset {
  Matrix features;
  Vector labels;

  int num_samples() const { return static_cast<int>(features.cols()); }
  int dimension() const { return static_cast<int>(features.rows()); }
};

struct PartitionedDataset {
  Matrix features;  // dimension x num_samples, samples as columns
  Vector labels;
  std::vector<std::vector<int>> shards;  // per-client sample indices
  double zipf_exponent = 0.0;

  int num_samples() const { return static_cast<int>(features.cols()); }
  int dimension() const { return static_cast<int>(features.rows()); }
  int num_clients() const { return static_cast<int>(shards.size()); }
  std::vector<int> shard_sizes() const;
};

/// Per-client sample counts proportional to k^(-exponent), k = 1..num_clients,
/// rounded by largest remainder so the sizes sum to num_samples exactly and
/// stay non-increasing in the client index. Throws when num_samples <
/// num_clients or the exponent is negative.
std::vector<int> zipf_shard_sizes(int num_samples, int num_clients, double exponent);

/// Splits a dataset into disjoint uniformly random shards with Zipf sizes.
PartitionedDataset zipf_partition(Dataset data, int num_clients, double exponent,
                                  std::mt19937_64& rng);

/// Gaussian cluster mixture. Cluster means are drawn once at distance
/// `separation` from the origin; each sample is its cluster mean plus
/// Gaussian noise. Labels are +1/-1 (clusters split into two halves), which
/// keeps the margins scalar for both built-in losses.
///
/// The first `nuisance_dims` feature dimensions carry no class signal and
/// are scaled by `nuisance_scale`: strong class-independent variance that a
/// model must learn to suppress before the class direction pays off, which
/// stretches the accuracy-vs-training curve.
Dataset make_synthetic(int num_samples, int dimension, int num_classes, double separation,
                       std::mt19937_64& rng, int nuisance_dims = 0,
                       double nuisance_scale = 1.0);

/// Reads "f1,...,fd,label" rows (no header, UTF-8). Labels 0/1 are mapped to
/// -1/+1; any other numeric label is kept as-is.
Dataset load_dataset_csv(const std::string& path);

/// Smallest-shard-size inversion of the Zipf law: the exponent for which the
/// last client ends up with approximately `target_min` samples.
double sigma_for_min_shard(int num_samples, int num_clients, int target_min);

}  // namespace flsched
