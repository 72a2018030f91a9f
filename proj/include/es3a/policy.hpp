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

#include <cstdint>
#include <string>
#include <vector>

#include "es3a/config.hpp"
#include "es3a/events.hpp"
#include "es3a/topology.hpp"

namespace es3a {

/// Stage-1 policy P_UE: which authentication method runs, where, when, and
/// under what admission threshold.
struct SecurityPolicy {
  int ue_id = 0;
  AuthMethod method = AuthMethod::Aka;  // Aka or Pls (fallback is an outcome, not a plan)
  int domain_id = 0;
  double slot_offset_ms = 0.0;
  double t_th = 0.4;
};

/// Discretized observation the agent conditions on. Bucket boundaries are
/// fixed for the whole run.
struct StateVector {
  int ue_class = 0;              // 0 Sensor, 1 Industrial
  int req_latency_bucket = 0;    // 3 buckets
  int channel_bucket = 0;        // 4 buckets over q*f
  std::vector<int> domain_load_bucket;  // 4 buckets per domain, topology order
  int security_factor_bucket = 0;       // 3 buckets over recent mean auth delay

  static constexpr int kReqBuckets = 3;
  static constexpr int kChannelBuckets = 4;
  static constexpr int kLoadBuckets = 4;
  static constexpr int kSecFactorBuckets = 3;

  /// Packs the state into a table key; supports up to 12 domains.
  std::uint64_t key() const {
    std::uint64_t k = 0;
    k = k * 2 + static_cast<std::uint64_t>(ue_class);
    k = k * kReqBuckets + static_cast<std::uint64_t>(req_latency_bucket);
    k = k * kChannelBuckets + static_cast<std::uint64_t>(channel_bucket);
    for (int b : domain_load_bucket) k = k * kLoadBuckets + static_cast<std::uint64_t>(b);
    k = k * kSecFactorBuckets + static_cast<std::uint64_t>(security_factor_bucket);
    return k;
  }

  std::string describe() const {
    std::string s = "c" + std::to_string(ue_class) + ",r" + std::to_string(req_latency_bucket) +
                    ",q" + std::to_string(channel_bucket);
    for (std::size_t i = 0; i < domain_load_bucket.size(); ++i)
      s += ",l" + std::to_string(i) + ":" + std::to_string(domain_load_bucket[i]);
    s += ",f" + std::to_string(security_factor_bucket);
    return s;
  }

  bool operator==(const StateVector&) const = default;
};

inline int bucket_of(double v, std::initializer_list<double> boundaries) {
  int b = 0;
  for (double edge : boundaries)
    if (v >= edge) ++b;
  return b;
}

/// Network-condition inputs to the observation that are not per-UE.
struct MetricsWindow {
  std::vector<double> domain_utilization;  // topology order, in [0,1]
  double recent_mean_latency_ms = 0.0;
};

/// Deterministic discretization of the UE's requirements, channel, domain
/// loads, and the recent authentication-delay level.
inline StateVector observe_state(const UeNode& ue, double qf, const MetricsWindow& window) {
  StateVector s;
  s.ue_class = ue.ue_class == UeClass::Sensor ? 0 : 1;
  s.req_latency_bucket = bucket_of(ue.req.max_latency_ms, {10.0 + 1e-9, 50.0 + 1e-9});
  s.channel_bucket = bucket_of(qf, {0.25, 0.5, 0.75});
  s.domain_load_bucket.reserve(window.domain_utilization.size());
  for (double u : window.domain_utilization)
    s.domain_load_bucket.push_back(bucket_of(u, {0.25, 0.5, 0.75}));
  s.security_factor_bucket = bucket_of(window.recent_mean_latency_ms, {15.0, 60.0});
  return s;
}

}  // namespace es3a
