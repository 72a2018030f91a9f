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

#include <map>
#include <vector>

#include "es3a/trust.hpp"

namespace es3a {

/// A data-plane packet as the filter sees it. The malicious flag is ground
/// truth used only for scoring; the filter never reads it.
struct Packet {
  int ue_id = 0;
  bool malicious = false;
};

struct FilterResult {
  std::vector<Packet> passed;
  std::vector<Packet> dropped;
  // Per source UE: whether its sub-batch violated the rate rule, and the
  // trust decision applied to it.
  std::map<int, bool> violated;
  std::map<int, AccessDecision> decisions;
};

/// Trust-based packet filtering with the behavior closed loop.
///
/// Drop rule: packets from UEs whose enforcement trust is below t_th are
/// dropped. Behavior rule: a source whose batch exceeds the per-UE rate cap
/// for the window emits one malicious observation per packet; compliant
/// packets emit benign observations. Both passed and dropped traffic is
/// observed, so sustained attackers keep eroding their own trust while a
/// reformed source can rebuild it.
///
/// When `closed_loop` is false (the centralized baseline) observations are
/// still recorded to the store, but enforcement reads the store through the
/// TrustSystem's lagged snapshot, which is what removes the real-time loop.
inline FilterResult filter_packets(TrustSystem& trust, int domain_id,
                                   const std::vector<Packet>& batch, double now,
                                   double window_ms, double rate_cap_pps, double t_th) {
  FilterResult result;
  std::map<int, std::uint32_t> per_source;
  for (const Packet& p : batch) ++per_source[p.ue_id];

  const double cap = rate_cap_pps * window_ms / 1000.0;
  for (const auto& [ue, count] : per_source) {
    result.violated[ue] = static_cast<double>(count) > cap;
    result.decisions.emplace(ue, trust.check_access(ue, now, t_th));
  }

  for (const Packet& p : batch) {
    if (result.decisions.at(p.ue_id).allowed) {
      result.passed.push_back(p);
    } else {
      result.dropped.push_back(p);
    }
  }

  // Closed loop: every processed packet feeds one behavior observation.
  for (const auto& [ue, count] : per_source) {
    const Observation obs = result.violated[ue] ? Observation::Malicious : Observation::Benign;
    for (std::uint32_t i = 0; i < count; ++i) trust.observe(ue, domain_id, obs, now);
  }
  return result;
}

}  // namespace es3a
