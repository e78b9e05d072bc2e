/*
 * Copyright 2026 the clicksim authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace clicksim {

// Deterministic random stream. All distribution transforms are implemented
// here on top of the raw mt19937_64 output, whose bit sequence is fixed by
// the standard; std::*_distribution is never used, so the same seed and call
// sequence yield identical draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t position() const noexcept { return n_draws_; }

  std::uint64_t next_u64() {
    ++n_draws_;
    return engine_();
  }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in the open interval (0, 1); safe under log().
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi] inclusive. Uses rejection sampling so the
  // distribution is exact.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via Box-Muller (two raw draws per pair, one cached).
  double normal();

  // Standard Gumbel(0, 1): -log(-log(U)).
  double gumbel();

  // Fisher-Yates shuffle of indices [0, n).
  std::vector<std::size_t> permutation(std::size_t n);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
      auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i)));
      std::swap(v[i], v[j]);
    }
  }

  // Derives an independent substream; used to give every component of a run
  // (weight init, shuffling, noise, data generation) its own stream so that
  // adding draws in one place does not shift any other.
  Rng fork(const std::string& label) const;
  Rng fork(std::uint64_t label) const;

 private:
  std::uint64_t seed_;
  std::uint64_t n_draws_ = 0;
  std::mt19937_64 engine_;
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

// FNV-1a 64-bit hash; used for substream derivation and config content
// addressing (not cryptographic).
std::uint64_t fnv1a64(const void* data, std::size_t len,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a64(const std::string& s,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

}  // namespace clicksim
