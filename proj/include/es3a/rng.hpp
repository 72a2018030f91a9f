// Copyright 2026 The es3a-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace es3a {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Derives the seed for a named stream from the master seed. Distinct names
/// give distinct seeds with overwhelming probability.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::string_view name) {
  if (name.empty()) throw std::invalid_argument("rng stream name must be nonempty");
  return splitmix64(master_seed ^ fnv1a64(name));
}

/// A named, independently seeded random stream.
///
/// The engine is std::mt19937_64 (its raw output sequence is pinned by the
/// standard); all distribution transforms are implemented here so that a
/// given (master seed, name) yields identical draws on every platform.
/// This keeps golden traces portable across standard libraries.
class RngStream {
 public:
  RngStream(std::string name, std::uint64_t seed)
      : name_(std::move(name)), seed_(seed), engine_(seed) {}

  const std::string& name() const { return name_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t draw_count() const { return draws_; }

  std::uint64_t next_u64() {
    ++draws_;
    return engine_();
  }

  /// Uniform in [0,1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  /// One standard normal via Box-Muller; two uniforms per draw, no cached
  /// spare, so the draw count stays predictable.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Normal truncated below at `lo` by rejection, with a clamp after a
  /// bounded number of attempts so the loop cannot stall on extreme configs.
  double truncated_normal(double mean, double stddev, double lo) {
    if (stddev <= 0.0) return std::max(mean, lo);
    for (int i = 0; i < 64; ++i) {
      const double x = normal(mean, stddev);
      if (x >= lo) return x;
    }
    return lo;
  }

  double exponential(double rate) {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return -std::log(u) / rate;
  }

  /// Poisson count by inversion (Knuth); means here are small (packets per
  /// window), where this is both exact and cheap.
  std::uint32_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    double p = 1.0;
    std::uint32_t k = 0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  /// Uniform integer in [0, n).
  std::uint32_t uniform_index(std::uint32_t n) {
    return static_cast<std::uint32_t>(uniform() * n) % n;
  }

 private:
  std::string name_;
  std::uint64_t seed_ = 0;
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

/// Registry of named streams derived from one master seed. Draws from one
/// stream never affect another's sequence.
class StreamSet {
 public:
  explicit StreamSet(std::uint64_t master_seed) : master_seed_(master_seed) {}

  std::uint64_t master_seed() const { return master_seed_; }

  RngStream& stream(const std::string& name) {
    auto it = streams_.find(name);
    if (it == streams_.end()) {
      it = streams_.emplace(name, RngStream(name, derive_stream_seed(master_seed_, name))).first;
    }
    return it->second;
  }

  /// Draw counters per stream, used by the mode-isolation regression test.
  std::map<std::string, std::uint64_t> draw_counts() const {
    std::map<std::string, std::uint64_t> out;
    for (const auto& [k, v] : streams_) out[k] = v.draw_count();
    return out;
  }

 private:
  std::uint64_t master_seed_;
  std::map<std::string, RngStream> streams_;
};

}  // namespace es3a
