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

#include <functional>
#include <vector>

#include "es3a/config.hpp"
#include "es3a/policy.hpp"
#include "es3a/rng.hpp"
#include "es3a/topology.hpp"

namespace es3a {

/// Discrete synchronous SIR worm propagation over a UE contact graph.
/// A susceptible node with k infected neighbors becomes infected with
/// probability 1 - (1 - p_inf)^k; infected nodes recover with p_rec.
/// Transitions are applied from the pre-step snapshot.
class SirModel {
 public:
  SirModel() = default;

  SirModel(const SirSection& cfg, int ue_count) : cfg_(cfg), states_(ue_count, InfectionState::Susceptible) {
    adjacency_.resize(ue_count);
    for (int ue : cfg.initial_infected)
      if (ue >= 0 && ue < ue_count) states_[ue] = InfectionState::Infected;
  }

  /// Contact by shared base station: UEs attached to the same BS are
  /// neighbors (worm locality for a radio network).
  void build_shared_bs_graph(const Topology& topo) {
    for (std::size_t i = 0; i < topo.ues.size(); ++i)
      for (std::size_t j = i + 1; j < topo.ues.size(); ++j)
        if (topo.ues[i].attached_bs == topo.ues[j].attached_bs) add_edge(static_cast<int>(i), static_cast<int>(j));
  }

  void add_edge(int i, int j) {
    adjacency_[i].push_back(j);
    adjacency_[j].push_back(i);
  }

  const std::vector<InfectionState>& states() const { return states_; }
  InfectionState state(int ue) const { return states_[ue]; }

  int count(InfectionState s) const {
    int n = 0;
    for (auto st : states_)
      if (st == s) ++n;
    return n;
  }

  /// One synchronous step; draws in UE-id order for determinism.
  void step(RngStream& rng) {
    const std::vector<InfectionState> snapshot = states_;
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
      if (snapshot[i] == InfectionState::Susceptible) {
        int infected_neighbors = 0;
        for (int j : adjacency_[i])
          if (snapshot[j] == InfectionState::Infected) ++infected_neighbors;
        if (infected_neighbors > 0) {
          const double p = 1.0 - std::pow(1.0 - cfg_.p_inf, infected_neighbors);
          if (rng.bernoulli(p)) states_[i] = InfectionState::Infected;
        }
      } else if (snapshot[i] == InfectionState::Infected) {
        if (rng.bernoulli(cfg_.p_rec)) states_[i] = InfectionState::Recovered;
      }
    }
  }

 private:
  SirSection cfg_;
  std::vector<InfectionState> states_;
  std::vector<std::vector<int>> adjacency_;
};

/// One window's worth of flood traffic from the infected population: each
/// infected UE emits a Poisson batch at the profile rate toward the target
/// domain, carrying the ground-truth malicious flag.
struct DdosBatch {
  int ue_id = 0;
  int target_domain = 0;
  std::uint32_t count = 0;
};

inline std::vector<DdosBatch> ddos_generate(const std::vector<int>& infected_ues,
                                            const AttackProfileConfig& profile, double now,
                                            double window_ms, RngStream& rng) {
  std::vector<DdosBatch> out;
  if (profile.kind != AttackKind::Ddos || !profile.active_at(now)) return out;
  const double mean = profile.intensity * window_ms / 1000.0;
  for (int ue : infected_ues) {
    const std::uint32_t n = rng.poisson(mean);
    if (n > 0) out.push_back({ue, profile.target_domain, n});
  }
  return out;
}

/// Training-stage poisoning: with probability `intensity` the reward sign is
/// flipped before the agent update.
inline double poison_feedback(double reward, const AttackProfileConfig& profile, double now,
                              RngStream& rng, bool* flipped = nullptr) {
  if (flipped) *flipped = false;
  if (profile.kind != AttackKind::Poisoning || !profile.active_at(now)) return reward;
  if (rng.bernoulli(profile.intensity)) {
    if (flipped) *flipped = true;
    return -reward;
  }
  return reward;
}

/// Inference-stage adversarial perturbation of the agent's observation.
///
/// True gradients do not exist over a tabular policy; instead each bucketed
/// feature is shifted by up to epsilon buckets in whichever direction lowers
/// the victim's greedy Q value, evaluating both shifts (and no shift, so the
/// perturbed value never exceeds the original). Features are processed in a
/// fixed order; the class feature is identity, not an observation, and stays.
inline StateVector perturb_observation(const StateVector& state, const AttackProfileConfig& profile,
                                       double now,
                                       const std::function<double(const StateVector&)>& greedy_q) {
  if (profile.kind != AttackKind::Adversarial || !profile.active_at(now)) return state;
  const int eps = static_cast<int>(profile.intensity);
  if (eps == 0) return state;

  StateVector best = state;
  double best_q = greedy_q(state);

  auto try_shift = [&](auto&& apply) {
    for (int delta : {-eps, eps}) {
      StateVector cand = best;
      apply(cand, delta);
      if (cand == best) continue;
      const double q = greedy_q(cand);
      if (q < best_q) {
        best_q = q;
        best = cand;
      }
    }
  };

  try_shift([](StateVector& s, int d) {
    s.req_latency_bucket = std::clamp(s.req_latency_bucket + d, 0, StateVector::kReqBuckets - 1);
  });
  try_shift([](StateVector& s, int d) {
    s.channel_bucket = std::clamp(s.channel_bucket + d, 0, StateVector::kChannelBuckets - 1);
  });
  for (std::size_t i = 0; i < state.domain_load_bucket.size(); ++i) {
    try_shift([i](StateVector& s, int d) {
      s.domain_load_bucket[i] = std::clamp(s.domain_load_bucket[i] + d, 0, StateVector::kLoadBuckets - 1);
    });
  }
  try_shift([](StateVector& s, int d) {
    s.security_factor_bucket =
        std::clamp(s.security_factor_bucket + d, 0, StateVector::kSecFactorBuckets - 1);
  });
  return best;
}

}  // namespace es3a
