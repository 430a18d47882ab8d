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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

#include "flsched/types.hpp"

namespace flsched {

// Seed derivation and sampling helpers. The standard <random> distributions
// are implementation-defined, so every draw below is built directly on the
// mt19937_64 bit stream; identical seeds give identical sequences on any
// platform. One master seed is split into independent named streams so that
// changing the draw count of one module never perturbs another.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t mix_seed(std::uint64_t master, std::string_view stream,
                              std::uint64_t salt = 0) {
  return splitmix64(master ^ splitmix64(fnv1a(stream) + 0x632be59bd9b4e019ULL * salt));
}

inline std::mt19937_64 make_stream(std::uint64_t master, std::string_view stream,
                                   std::uint64_t salt = 0) {
  return std::mt19937_64(mix_seed(master, stream, salt));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection (unbiased).
inline std::uint64_t bounded_int(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = -n % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

/// Standard normal via Box-Muller; always consumes exactly two draws.
inline double normal_sample(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Circularly-symmetric complex Gaussian with E[|z|^2] = variance.
inline Complex complex_gaussian(std::mt19937_64& rng, double variance) {
  const double scale = std::sqrt(variance / 2.0);
  const double re = normal_sample(rng);
  const double im = normal_sample(rng);
  return {scale * re, scale * im};
}

/// In-place Fisher-Yates shuffle using bounded_int draws.
template <typename T>
void shuffle_inplace(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(bounded_int(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace flsched
