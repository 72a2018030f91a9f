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

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "es3a/config.hpp"
#include "es3a/policy.hpp"
#include "es3a/rng.hpp"

namespace es3a {

/// One orchestration action: an authentication method, an executing domain,
/// and a schedule slot.
struct AgentAction {
  AuthMethod method = AuthMethod::Aka;
  int domain_id = 0;
  double slot_offset_ms = 0.0;
};

class NoFeasibleActionError : public std::runtime_error {
 public:
  NoFeasibleActionError() : std::runtime_error("no feasible action after constraint filtering") {}
};

class OrphanOutcomeError : public std::logic_error {
 public:
  explicit OrphanOutcomeError(std::uint64_t request_id)
      : std::logic_error("feedback for unknown decision, request " + std::to_string(request_id)) {}
};

/// Enumerates the feasible action set in a canonical order: methods sorted
/// (AKA before PLS), then domains in topology order, then slot offsets.
/// Hard constraints: Industrial UEs are never offered bare PLS; dtm restricts
/// domains to the UE's home domain.
inline std::vector<AgentAction> enumerate_actions(UeClass ue_class, ArchitectureMode mode,
                                                  int home_domain, const std::vector<int>& domains,
                                                  const std::vector<double>& slot_offsets) {
  std::vector<AgentAction> actions;
  const bool allow_pls = ue_class == UeClass::Sensor;
  for (AuthMethod method : {AuthMethod::Aka, AuthMethod::Pls}) {
    if (method == AuthMethod::Pls && !allow_pls) continue;
    for (int dom : domains) {
      if (mode == ArchitectureMode::Dtm && dom != home_domain) continue;
      for (double slot : slot_offsets) actions.push_back({method, dom, slot});
    }
  }
  if (actions.empty()) throw NoFeasibleActionError();
  return actions;
}

/// Tabular Q model with an epsilon-greedy policy. Epsilon decays linearly
/// over the run (monotone by construction); Q ties break toward the lowest
/// action index. Unvisited entries read as 0, which is optimistic against
/// the negative-latency rewards and drives initial exploration.
class AgentModel {
 public:
  AgentModel() = default;

  explicit AgentModel(const AgentSection& params) : params_(params) {}

  const AgentSection& params() const { return params_; }

  double q_value(std::uint64_t state_key, int action_index) const {
    auto it = q_.find(entry_key(state_key, action_index));
    return it == q_.end() ? 0.0 : it->second;
  }

  double epsilon_at(double progress) const {
    const double p = std::clamp(progress, 0.0, 1.0);
    return params_.epsilon_start + (params_.epsilon_end - params_.epsilon_start) * p;
  }

  int greedy_action(std::uint64_t state_key, int action_count) const {
    int best = 0;
    double best_q = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < action_count; ++a) {
      const double q = q_value(state_key, a);
      if (q > best_q) {
        best_q = q;
        best = a;
      }
    }
    return best;
  }

  double max_q(std::uint64_t state_key, int action_count) const {
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < action_count; ++a) best = std::max(best, q_value(state_key, a));
    return best;
  }

  /// Epsilon-greedy selection; `progress` is the run fraction in [0,1]
  /// driving the epsilon schedule.
  int select_action(std::uint64_t state_key, int action_count, double progress, RngStream& rng) {
    if (action_count <= 0) throw NoFeasibleActionError();
    const double eps = epsilon_at(progress);
    // Both draws happen unconditionally to keep the stream draw count
    // independent of epsilon.
    const double explore = rng.uniform();
    const std::uint32_t pick = rng.uniform_index(static_cast<std::uint32_t>(action_count));
    if (explore < eps) return static_cast<int>(pick);
    return greedy_action(state_key, action_count);
  }

  /// One-step value update:
  /// Q <- Q + lr * (reward + discount * maxQ(next) - Q).
  void update(std::uint64_t state_key, int action_index, double reward,
              std::uint64_t next_state_key, int next_action_count) {
    const double next_max = next_action_count > 0 ? max_q(next_state_key, next_action_count) : 0.0;
    double& q = q_[entry_key(state_key, action_index)];
    q += params_.learning_rate * (reward + params_.discount * next_max - q);
  }

  std::size_t table_size() const { return q_.size(); }

  /// Checkpoint: JSON map of "state:action" -> value, reloadable for
  /// evaluation-only runs.
  Json checkpoint() const {
    std::map<std::string, double> sorted;
    for (const auto& [key, value] : q_) {
      const std::uint64_t state = key >> 8;
      const int action = static_cast<int>(key & 0xff);
      sorted[std::to_string(state) + ":" + std::to_string(action)] = value;
    }
    return Json(sorted);
  }

  void restore(const Json& snapshot) {
    q_.clear();
    for (auto it = snapshot.begin(); it != snapshot.end(); ++it) {
      const std::string& k = it.key();
      const auto colon = k.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("bad checkpoint key: " + k);
      const std::uint64_t state = std::stoull(k.substr(0, colon));
      const int action = std::stoi(k.substr(colon + 1));
      q_[entry_key(state, action)] = it.value().get<double>();
    }
  }

 private:
  static std::uint64_t entry_key(std::uint64_t state_key, int action_index) {
    return (state_key << 8) | static_cast<std::uint64_t>(action_index & 0xff);
  }

  AgentSection params_;
  std::unordered_map<std::uint64_t, double> q_;
};

}  // namespace es3a
