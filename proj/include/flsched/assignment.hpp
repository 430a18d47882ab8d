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
#include <stdexcept>
#include <vector>

#include "flsched/types.hpp"

namespace flsched {

template <typename Scalar>
struct AssignmentResult {
  std::vector<int> rb_of_client;  // -1 when the client is left unassigned
  Scalar total_weight{};
};

// Exact maximum-weight bipartite assignment of clients (rows) to RBs
// (columns), at most one RB per client and one client per RB. Solved by
// dynamic programming over subsets of RBs, which is exact for any weights
// and cheap for the RB counts this simulator targets (guarded at 24).
//
// Conventions shared with the schedulers and their test oracles:
//   - an edge exists only when allowed(k, b) and weights(k, b) > 0; in
//     particular zero-weight edges are never matched,
//   - among maximum-weight assignments the lexicographically smallest one
//     is returned (clients in index order, lower RB index first, unassigned
//     ranking last), so the output is deterministic.
template <typename Scalar>
AssignmentResult<Scalar> max_weight_assignment(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& weights,
    const BoolMatrix& allowed) {
  const int num_clients = static_cast<int>(weights.rows());
  const int num_rbs = static_cast<int>(weights.cols());
  if (allowed.rows() != num_clients || allowed.cols() != num_rbs)
    throw std::invalid_argument("assignment: weight/mask shape mismatch");
  if (num_rbs > 24) throw std::invalid_argument("assignment: more than 24 RBs is unsupported");

  const std::uint32_t num_masks = 1u << num_rbs;
  // best[k * num_masks + mask]: optimal value for clients k.. with the RB
  // set `mask` still free.
  std::vector<Scalar> best(static_cast<std::size_t>(num_clients + 1) * num_masks, Scalar(0));
  for (int k = num_clients - 1; k >= 0; --k) {
    for (std::uint32_t mask = 0; mask < num_masks; ++mask) {
      Scalar value = best[(k + 1) * num_masks + mask];
      for (int b = 0; b < num_rbs; ++b) {
        if (!(mask & (1u << b)) || !allowed(k, b) || !(weights(k, b) > Scalar(0))) continue;
        const Scalar candidate = weights(k, b) + best[(k + 1) * num_masks + (mask ^ (1u << b))];
        if (candidate > value) value = candidate;
      }
      best[k * num_masks + mask] = value;
    }
  }

  AssignmentResult<Scalar> result;
  result.rb_of_client.assign(num_clients, -1);
  std::uint32_t mask = num_masks - 1;
  for (int k = 0; k < num_clients; ++k) {
    Scalar value = best[(k + 1) * num_masks + mask];
    int pick = -1;
    for (int b = 0; b < num_rbs; ++b) {
      if (!(mask & (1u << b)) || !allowed(k, b) || !(weights(k, b) > Scalar(0))) continue;
      const Scalar candidate = weights(k, b) + best[(k + 1) * num_masks + (mask ^ (1u << b))];
      // Recomputed exactly as in the fill above, so ties compare bit-equal.
      if (candidate > value || (candidate == value && pick == -1)) {
        value = candidate;
        pick = b;
      }
    }
    if (pick >= 0) {
      result.rb_of_client[k] = pick;
      result.total_weight += weights(k, pick);
      mask ^= 1u << pick;
    }
  }
  return result;
}

}  // namespace flsched
