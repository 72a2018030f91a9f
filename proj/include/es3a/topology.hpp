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
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "es3a/config.hpp"
#include "es3a/rng.hpp"

namespace es3a {

enum class InfectionState : std::uint8_t { Susceptible, Infected, Recovered };

inline const char* to_string(InfectionState s) {
  switch (s) {
    case InfectionState::Susceptible: return "S";
    case InfectionState::Infected: return "I";
    case InfectionState::Recovered: return "R";
  }
  return "S";
}

struct SecurityRequirement {
  double max_latency_ms = 10.0;
  SecurityLevel security_level = SecurityLevel::Lightweight;
};

struct UeNode {
  int id = 0;
  UeClass ue_class = UeClass::Sensor;
  SecurityRequirement req;
  double x = 0.0;
  double y = 0.0;
  double rf_fingerprint_quality = 1.0;  // f in [0,1]
  InfectionState infection = InfectionState::Susceptible;
  int attached_bs = -1;
  int home_domain = -1;     // domain of the attached base station
  int serving_domain = -1;  // changes only via DomainSwitch events
};

struct BaseStation {
  int id = 0;
  int domain_id = 0;
  double x = 0.0;
  double y = 0.0;
  int load = 0;  // concurrent requests currently executing in this BS's domain
};

struct SecurityDomain {
  int id = 0;
  DomainKind kind = DomainKind::Ran;
  std::vector<int> bs_members;
  int nf_capacity = 32;
  CapabilityFlags capabilities;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyTopologyError : public std::runtime_error {
 public:
  EmptyTopologyError() : std::runtime_error("topology has no base stations") {}
};

class Topology {
 public:
  std::vector<UeNode> ues;
  std::vector<BaseStation> base_stations;
  std::vector<SecurityDomain> domains;

  const BaseStation& bs_by_id(int id) const {
    for (const auto& b : base_stations)
      if (b.id == id) return b;
    throw ConfigError("unknown base station id " + std::to_string(id));
  }

  const SecurityDomain& domain_by_id(int id) const {
    for (const auto& d : domains)
      if (d.id == id) return d;
    throw ConfigError("unknown domain id " + std::to_string(id));
  }

  bool has_domain(int id) const {
    for (const auto& d : domains)
      if (d.id == id) return true;
    return false;
  }

  int domain_index(int id) const {
    for (std::size_t i = 0; i < domains.size(); ++i)
      if (domains[i].id == id) return static_cast<int>(i);
    throw ConfigError("unknown domain id " + std::to_string(id));
  }

  Json dump() const {
    Json ues_j = Json::array();
    for (const auto& u : ues) {
      ues_j.push_back(Json{{"id", u.id},
                           {"class", to_string(u.ue_class)},
                           {"max_latency_ms", u.req.max_latency_ms},
                           {"security_level", to_string(u.req.security_level)},
                           {"position", {u.x, u.y}},
                           {"fingerprint", u.rf_fingerprint_quality},
                           {"attached_bs", u.attached_bs},
                           {"home_domain", u.home_domain}});
    }
    Json bs_j = Json::array();
    for (const auto& b : base_stations)
      bs_j.push_back(Json{{"id", b.id}, {"domain", b.domain_id}, {"position", {b.x, b.y}}});
    Json dom_j = Json::array();
    for (const auto& d : domains)
      dom_j.push_back(Json{{"id", d.id},
                           {"kind", to_string(d.kind)},
                           {"nf_capacity", d.nf_capacity},
                           {"bs_members", d.bs_members}});
    return Json{{"ues", ues_j}, {"base_stations", bs_j}, {"domains", dom_j}};
  }
};

/// Nearest base station by Euclidean distance; ties break toward the lowest
/// BS id.
inline const BaseStation& nearest_bs(const UeNode& ue, const Topology& topo) {
  if (topo.base_stations.empty()) throw EmptyTopologyError();
  const BaseStation* best = nullptr;
  double best_d2 = 0.0;
  for (const auto& b : topo.base_stations) {
    const double dx = ue.x - b.x;
    const double dy = ue.y - b.y;
    const double d2 = dx * dx + dy * dy;
    if (!best || d2 < best_d2 || (d2 == best_d2 && b.id < best->id)) {
      best = &b;
      best_d2 = d2;
    }
  }
  return *best;
}

/// Builds the static topology from a validated config. UEs are laid out on
/// the configured grid (a stand-in; the case study gives node counts, not
/// geometry), fingerprints are drawn from the "channel" stream, and each UE
/// attaches to its nearest base station.
inline Topology build_topology(const ScenarioConfig& cfg, RngStream& channel_rng) {
  Topology topo;

  for (const auto& dc : cfg.topology.domains) {
    SecurityDomain d;
    d.id = dc.id;
    d.kind = dc.kind;
    d.nf_capacity = dc.nf_capacity;
    d.capabilities = capabilities_for(cfg.run.mode);
    topo.domains.push_back(d);
  }
  for (const auto& bc : cfg.topology.base_stations) {
    if (!topo.has_domain(bc.domain))
      throw ConfigError("base station " + std::to_string(bc.id) + " references unknown domain " +
                        std::to_string(bc.domain));
    BaseStation b;
    b.id = bc.id;
    b.domain_id = bc.domain;
    b.x = bc.x;
    b.y = bc.y;
    topo.base_stations.push_back(b);
    for (auto& d : topo.domains)
      if (d.id == bc.domain) d.bs_members.push_back(bc.id);
  }

  const auto& grid = cfg.topology.ue_grid;
  int next_id = 0;
  for (const auto& g : cfg.topology.ue_groups) {
    for (int i = 0; i < g.count; ++i) {
      UeNode u;
      u.id = next_id++;
      u.ue_class = g.ue_class;
      u.req.max_latency_ms = g.max_latency_ms;
      u.req.security_level = g.security_level;
      u.x = grid.origin_x + (u.id % grid.cols) * grid.spacing_x;
      u.y = grid.origin_y + (u.id / grid.cols) * grid.spacing_y;
      u.rf_fingerprint_quality =
          channel_rng.uniform(cfg.services.fingerprint_min, cfg.services.fingerprint_max);
      topo.ues.push_back(u);
    }
  }
  for (auto& u : topo.ues) {
    const BaseStation& b = nearest_bs(u, topo);
    u.attached_bs = b.id;
    u.home_domain = b.domain_id;
    u.serving_domain = b.domain_id;
  }
  return topo;
}

/// Dynamic channel quality: a per-(UE,BS) base level with bounded Gaussian
/// jitter each access attempt, clamped to [0,1]. Jitter reverts to the base,
/// which makes PLS success channel dependent without a propagation model.
class ChannelModel {
 public:
  ChannelModel() = default;

  ChannelModel(const ScenarioConfig& cfg, const Topology& topo, RngStream& channel_rng)
      : jitter_(cfg.services.channel_jitter) {
    for (const auto& u : topo.ues)
      for (const auto& b : topo.base_stations)
        base_[{u.id, b.id}] =
            channel_rng.uniform(cfg.services.channel_base_min, cfg.services.channel_base_max);
  }

  double base_quality(int ue_id, int bs_id) const {
    auto it = base_.find({ue_id, bs_id});
    if (it == base_.end()) throw ConfigError("no channel entry for ue/bs pair");
    return it->second;
  }

  void set_base_quality(int ue_id, int bs_id, double q) { base_[{ue_id, bs_id}] = q; }

  double sample(int ue_id, int bs_id, RngStream& rng) const {
    const double q = base_quality(ue_id, bs_id) + (jitter_ > 0.0 ? rng.normal(0.0, jitter_) : 0.0);
    return std::clamp(q, 0.0, 1.0);
  }

 private:
  double jitter_ = 0.0;
  std::map<std::pair<int, int>, double> base_;
};

}  // namespace es3a
