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

#include <array>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "es3a/rng.hpp"

namespace es3a {

using Json = nlohmann::json;

enum class UeClass : std::uint8_t { Sensor, Industrial };
enum class SecurityLevel : std::uint8_t { Lightweight, Robust };
enum class DomainKind : std::uint8_t { Ran, Edge, Core };
enum class ArchitectureMode : std::uint8_t { Es3a, Centralized, Dtm };

inline const char* to_string(UeClass c) { return c == UeClass::Sensor ? "Sensor" : "Industrial"; }
inline const char* to_string(SecurityLevel s) {
  return s == SecurityLevel::Lightweight ? "Lightweight" : "Robust";
}
inline const char* to_string(DomainKind k) {
  switch (k) {
    case DomainKind::Ran: return "RAN";
    case DomainKind::Edge: return "Edge";
    case DomainKind::Core: return "Core";
  }
  return "RAN";
}
inline const char* to_string(ArchitectureMode m) {
  switch (m) {
    case ArchitectureMode::Es3a: return "es3a";
    case ArchitectureMode::Centralized: return "centralized";
    case ArchitectureMode::Dtm: return "dtm";
  }
  return "es3a";
}

inline std::optional<ArchitectureMode> mode_from_string(const std::string& s) {
  if (s == "es3a") return ArchitectureMode::Es3a;
  if (s == "centralized") return ArchitectureMode::Centralized;
  if (s == "dtm") return ArchitectureMode::Dtm;
  return std::nullopt;
}

/// Per-mode capability flags. Centralized rule systems run no closed loop
/// (behavior observations reach enforcement only at a slow sync cadence) and
/// cannot customize policies or offload across domains; DTM runs the agent
/// and trust loop but is confined to the UE's home domain.
struct CapabilityFlags {
  bool closed_loop = true;
  bool customized_security = true;
  bool interdomain_collab = true;
};

inline CapabilityFlags capabilities_for(ArchitectureMode m) {
  switch (m) {
    case ArchitectureMode::Es3a: return {true, true, true};
    case ArchitectureMode::Dtm: return {true, true, false};
    case ArchitectureMode::Centralized: return {false, false, false};
  }
  return {};
}

// --- Config sections ---------------------------------------------------------

struct UeGroupConfig {
  UeClass ue_class = UeClass::Sensor;
  int count = 0;
  double max_latency_ms = 10.0;
  SecurityLevel security_level = SecurityLevel::Lightweight;
};

struct BaseStationConfig {
  int id = 0;
  int domain = 0;
  double x = 0.0;
  double y = 0.0;
};

struct DomainConfig {
  int id = 0;
  DomainKind kind = DomainKind::Ran;
  int nf_capacity = 32;
};

struct UeGridConfig {
  int cols = 10;
  double spacing_x = 10.0;
  double spacing_y = 8.0;
  double origin_x = 0.0;
  double origin_y = 0.0;
};

struct TopologySection {
  std::vector<UeGroupConfig> ue_groups;
  std::vector<BaseStationConfig> base_stations;
  std::vector<DomainConfig> domains;
  // Stand-in placement: the case study reports node counts but no geometry.
  UeGridConfig ue_grid;
};

struct LatencySpec {
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
};

struct ServicesSection {
  LatencySpec aka_ran_rtt{4.0, 0.8, 0.5};
  LatencySpec aka_core_rtt{12.0, 2.0, 2.0};
  LatencySpec aka_proc{4.0, 0.8, 0.5};
  LatencySpec pls_success{8.6, 1.2, 1.0};
  LatencySpec pls_attempt{4.0, 0.5, 0.5};
  LatencySpec orchestration_overhead{2.98, 0.35, 0.3};
  double pls_gate_sharpness = 10.0;
  double pls_gate_threshold = 0.5;
  double channel_base_min = 0.35;
  double channel_base_max = 0.95;
  double channel_jitter = 0.05;
  double fingerprint_min = 0.6;
  double fingerprint_max = 1.0;
  double nf_timeout_ms = 500.0;
  double ddos_packet_nf_ms = 16.0;
  // Accepted for forward compatibility; no consumer in the current models.
  double secret_key_rate = 0.0;
};

struct TrustSection {
  double prior_alpha = 1.0;
  double prior_beta = 1.0;
  double w_mal = 2.0;
  double t_th = 0.4;
  double fusion_lambda_per_ms = 0.001;
  double rate_cap_pps = 50.0;
  double filter_window_ms = 100.0;
  double centralized_sync_ms = 5000.0;
  double token_freshness_ms = 5000.0;
};

struct AgentSection {
  double learning_rate = 0.1;
  double discount = 0.9;
  double epsilon_start = 0.2;
  double epsilon_end = 0.01;
  std::vector<double> slot_offsets_ms{0.0, 5.0, 10.0};
};

struct SirSection {
  double p_inf = 0.05;
  double p_rec = 0.01;
  double tick_ms = 100.0;
  std::vector<int> initial_infected;
  std::string contact = "shared_bs";            // or "explicit"
  std::vector<std::array<int, 2>> edges;        // used when contact == "explicit"
};

enum class AttackKind : std::uint8_t { Ddos, Poisoning, Adversarial };

inline const char* to_string(AttackKind k) {
  switch (k) {
    case AttackKind::Ddos: return "ddos";
    case AttackKind::Poisoning: return "poisoning";
    case AttackKind::Adversarial: return "adversarial";
  }
  return "ddos";
}

struct AttackProfileConfig {
  AttackKind kind = AttackKind::Ddos;
  double intensity = 0.0;   // ddos: packets/s per infected UE; poisoning: flip prob; adversarial: bucket shift
  int target_domain = 0;    // ddos only
  double start_ms = 0.0;
  double end_ms = 0.0;      // start == end means the profile is disabled

  bool enabled() const { return end_ms > start_ms; }
  bool active_at(double t) const { return enabled() && t >= start_ms && t < end_ms; }
};

struct ThreatSection {
  SirSection sir;
  std::vector<AttackProfileConfig> profiles;
};

struct RunSection {
  double duration_ms = 45000.0;
  std::uint64_t master_seed = 1;
  ArchitectureMode mode = ArchitectureMode::Es3a;
  double requests_per_ue_per_s = 6.0;
  double scale = 1.0;
  double background_pps = 10.0;
  double metric_sample_ms = 1000.0;
};

struct ScenarioConfig {
  TopologySection topology;
  ServicesSection services;
  TrustSection trust;
  AgentSection agent;
  ThreatSection threat;
  RunSection run;
  Json raw;  // canonicalized source document, used for the scenario hash

  int total_ues() const {
    int n = 0;
    for (const auto& g : topology.ue_groups) n += g.count;
    return n;
  }
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::ostringstream os;
    os << "invalid scenario config (" << v.size() << " violation(s)):";
    for (const auto& s : v) os << "\n  - " << s;
    return os.str();
  }
  std::vector<std::string> violations_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Collects every violation with its field path rather than stopping at the
/// first, so a bad config is reported in one pass.
class ConfigReader {
 public:
  explicit ConfigReader(const Json& root) : root_(root) {}

  std::vector<std::string>& errors() { return errors_; }

  const Json* section(const char* name) {
    if (!root_.contains(name)) return nullptr;
    if (!root_.at(name).is_object()) {
      fail(std::string(name) + ": expected an object");
      return nullptr;
    }
    return &root_.at(name);
  }

  void fail(const std::string& msg) { errors_.push_back(msg); }

  double number(const Json& obj, const std::string& path, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number()) {
      fail(path + "." + key + ": expected a number");
      return fallback;
    }
    return obj.at(key).get<double>();
  }

  double positive(const Json& obj, const std::string& path, const char* key, double fallback) {
    const double v = number(obj, path, key, fallback);
    if (v <= 0.0) fail(path + "." + key + ": must be > 0");
    return v;
  }

  double non_negative(const Json& obj, const std::string& path, const char* key, double fallback) {
    const double v = number(obj, path, key, fallback);
    if (v < 0.0) fail(path + "." + key + ": must be >= 0");
    return v;
  }

  double probability(const Json& obj, const std::string& path, const char* key, double fallback) {
    const double v = number(obj, path, key, fallback);
    if (v < 0.0 || v > 1.0) fail(path + "." + key + ": out of range [0,1]");
    return v;
  }

  std::string text(const Json& obj, const std::string& path, const char* key,
                   const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_string()) {
      fail(path + "." + key + ": expected a string");
      return fallback;
    }
    return obj.at(key).get<std::string>();
  }

 private:
  const Json& root_;
  std::vector<std::string> errors_;
};

inline LatencySpec latency_spec(ConfigReader& r, const Json& obj, const std::string& path,
                                const char* key, LatencySpec fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& j = obj.at(key);
  if (!j.is_object()) {
    r.fail(path + "." + key + ": expected an object {mean, stddev, min}");
    return fallback;
  }
  LatencySpec s;
  const std::string p = path + "." + key;
  s.mean = r.positive(j, p, "mean", fallback.mean);
  s.stddev = r.non_negative(j, p, "stddev", fallback.stddev);
  s.min = r.non_negative(j, p, "min", fallback.min);
  return s;
}

}  // namespace detail

/// Parses and validates a scenario document. Throws ValidationError listing
/// every violation by field path.
inline ScenarioConfig parse_scenario_json(const Json& doc) {
  detail::ConfigReader r(doc);
  ScenarioConfig cfg;
  cfg.raw = doc;

  if (const Json* topo = r.section("topology")) {
    const std::string path = "topology";
    if (topo->contains("ue_groups")) {
      if (!topo->at("ue_groups").is_array()) {
        r.fail("topology.ue_groups: expected an array");
      } else {
        int i = 0;
        for (const Json& g : topo->at("ue_groups")) {
          const std::string p = path + ".ue_groups[" + std::to_string(i++) + "]";
          UeGroupConfig uc;
          const std::string cls = r.text(g, p, "class", "Sensor");
          if (cls == "Sensor") {
            uc.ue_class = UeClass::Sensor;
          } else if (cls == "Industrial") {
            uc.ue_class = UeClass::Industrial;
          } else {
            r.fail(p + ".class: unknown class '" + cls + "'");
          }
          uc.count = static_cast<int>(r.non_negative(g, p, "count", 0));
          uc.max_latency_ms = r.positive(g, p, "max_latency_ms", 10.0);
          const std::string lvl = r.text(g, p, "security_level",
                                         uc.ue_class == UeClass::Sensor ? "Lightweight" : "Robust");
          if (lvl == "Lightweight") {
            uc.security_level = SecurityLevel::Lightweight;
          } else if (lvl == "Robust") {
            uc.security_level = SecurityLevel::Robust;
          } else {
            r.fail(p + ".security_level: unknown level '" + lvl + "'");
          }
          cfg.topology.ue_groups.push_back(uc);
        }
      }
    }
    if (topo->contains("domains")) {
      if (!topo->at("domains").is_array()) {
        r.fail("topology.domains: expected an array");
      } else {
        int i = 0;
        for (const Json& d : topo->at("domains")) {
          const std::string p = path + ".domains[" + std::to_string(i++) + "]";
          DomainConfig dc;
          dc.id = static_cast<int>(r.number(d, p, "id", 0));
          const std::string kind = r.text(d, p, "kind", "RAN");
          if (kind == "RAN") {
            dc.kind = DomainKind::Ran;
          } else if (kind == "Edge") {
            dc.kind = DomainKind::Edge;
          } else if (kind == "Core") {
            dc.kind = DomainKind::Core;
          } else {
            r.fail(p + ".kind: unknown kind '" + kind + "'");
          }
          dc.nf_capacity = static_cast<int>(r.positive(d, p, "nf_capacity", 32));
          cfg.topology.domains.push_back(dc);
        }
      }
    }
    if (topo->contains("base_stations")) {
      if (!topo->at("base_stations").is_array()) {
        r.fail("topology.base_stations: expected an array");
      } else {
        int i = 0;
        for (const Json& b : topo->at("base_stations")) {
          const std::string p = path + ".base_stations[" + std::to_string(i++) + "]";
          BaseStationConfig bc;
          bc.id = static_cast<int>(r.number(b, p, "id", 0));
          bc.domain = static_cast<int>(r.number(b, p, "domain", 0));
          if (b.contains("position") && b.at("position").is_array() &&
              b.at("position").size() == 2) {
            bc.x = b.at("position").at(0).get<double>();
            bc.y = b.at("position").at(1).get<double>();
          } else if (b.contains("position")) {
            r.fail(p + ".position: expected [x, y]");
          }
          cfg.topology.base_stations.push_back(bc);
        }
      }
    }
    if (topo->contains("ue_grid")) {
      const Json& g = topo->at("ue_grid");
      const std::string p = path + ".ue_grid";
      cfg.topology.ue_grid.cols = static_cast<int>(r.positive(g, p, "cols", 10));
      cfg.topology.ue_grid.spacing_x = r.positive(g, p, "spacing_x", 10.0);
      cfg.topology.ue_grid.spacing_y = r.positive(g, p, "spacing_y", 8.0);
      if (g.contains("origin") && g.at("origin").is_array() && g.at("origin").size() == 2) {
        cfg.topology.ue_grid.origin_x = g.at("origin").at(0).get<double>();
        cfg.topology.ue_grid.origin_y = g.at("origin").at(1).get<double>();
      }
    }
  }

  // Cross references.
  {
    std::set<int> domain_ids;
    for (const auto& d : cfg.topology.domains) {
      if (!domain_ids.insert(d.id).second)
        r.fail("topology.domains: duplicate domain id " + std::to_string(d.id));
    }
    std::set<int> bs_ids;
    for (const auto& b : cfg.topology.base_stations) {
      if (!bs_ids.insert(b.id).second)
        r.fail("topology.base_stations: duplicate base station id " + std::to_string(b.id));
      if (!domain_ids.count(b.domain))
        r.fail("topology.base_stations: bs " + std::to_string(b.id) +
               " references unknown domain " + std::to_string(b.domain));
    }
    if (cfg.total_ues() > 0 && cfg.topology.base_stations.empty())
      r.fail("topology.base_stations: at least one base station is required when UEs exist");
  }

  if (const Json* svc = r.section("services")) {
    const std::string p = "services";
    auto& s = cfg.services;
    s.aka_ran_rtt = detail::latency_spec(r, *svc, p, "aka_ran_rtt", s.aka_ran_rtt);
    s.aka_core_rtt = detail::latency_spec(r, *svc, p, "aka_core_rtt", s.aka_core_rtt);
    s.aka_proc = detail::latency_spec(r, *svc, p, "aka_proc", s.aka_proc);
    s.pls_success = detail::latency_spec(r, *svc, p, "pls_success", s.pls_success);
    s.pls_attempt = detail::latency_spec(r, *svc, p, "pls_attempt", s.pls_attempt);
    s.orchestration_overhead =
        detail::latency_spec(r, *svc, p, "orchestration_overhead", s.orchestration_overhead);
    if (svc->contains("pls_gate")) {
      const Json& g = svc->at("pls_gate");
      s.pls_gate_sharpness = r.positive(g, p + ".pls_gate", "sharpness", s.pls_gate_sharpness);
      s.pls_gate_threshold = r.probability(g, p + ".pls_gate", "threshold", s.pls_gate_threshold);
    }
    if (svc->contains("channel")) {
      const Json& c = svc->at("channel");
      const std::string cp = p + ".channel";
      s.channel_base_min = r.probability(c, cp, "base_min", s.channel_base_min);
      s.channel_base_max = r.probability(c, cp, "base_max", s.channel_base_max);
      s.channel_jitter = r.non_negative(c, cp, "jitter", s.channel_jitter);
      s.fingerprint_min = r.probability(c, cp, "fingerprint_min", s.fingerprint_min);
      s.fingerprint_max = r.probability(c, cp, "fingerprint_max", s.fingerprint_max);
      if (s.channel_base_min > s.channel_base_max)
        r.fail(cp + ".base_min: must not exceed base_max");
      if (s.fingerprint_min > s.fingerprint_max)
        r.fail(cp + ".fingerprint_min: must not exceed fingerprint_max");
    }
    s.nf_timeout_ms = r.positive(*svc, p, "nf_timeout_ms", s.nf_timeout_ms);
    s.ddos_packet_nf_ms = r.non_negative(*svc, p, "ddos_packet_nf_ms", s.ddos_packet_nf_ms);
    s.secret_key_rate = r.non_negative(*svc, p, "secret_key_rate", s.secret_key_rate);
  }

  if (const Json* tr = r.section("trust")) {
    const std::string p = "trust";
    auto& t = cfg.trust;
    t.prior_alpha = r.positive(*tr, p, "prior_alpha", t.prior_alpha);
    t.prior_beta = r.positive(*tr, p, "prior_beta", t.prior_beta);
    t.w_mal = r.positive(*tr, p, "w_mal", t.w_mal);
    t.t_th = r.probability(*tr, p, "t_th", t.t_th);
    t.fusion_lambda_per_ms = r.non_negative(*tr, p, "fusion_lambda_per_ms", t.fusion_lambda_per_ms);
    t.rate_cap_pps = r.positive(*tr, p, "rate_cap_pps", t.rate_cap_pps);
    t.filter_window_ms = r.positive(*tr, p, "filter_window_ms", t.filter_window_ms);
    t.centralized_sync_ms = r.positive(*tr, p, "centralized_sync_ms", t.centralized_sync_ms);
    t.token_freshness_ms = r.positive(*tr, p, "token_freshness_ms", t.token_freshness_ms);
  }

  if (const Json* ag = r.section("agent")) {
    const std::string p = "agent";
    auto& a = cfg.agent;
    a.learning_rate = r.positive(*ag, p, "learning_rate", a.learning_rate);
    if (a.learning_rate > 1.0) r.fail(p + ".learning_rate: must be in (0,1]");
    a.discount = r.probability(*ag, p, "discount", a.discount);
    if (a.discount >= 1.0) r.fail(p + ".discount: must be in [0,1)");
    a.epsilon_start = r.probability(*ag, p, "epsilon_start", a.epsilon_start);
    a.epsilon_end = r.probability(*ag, p, "epsilon_end", a.epsilon_end);
    if (a.epsilon_end > a.epsilon_start) r.fail(p + ".epsilon_end: must not exceed epsilon_start");
    if (ag->contains("slot_offsets_ms")) {
      if (!ag->at("slot_offsets_ms").is_array() || ag->at("slot_offsets_ms").empty()) {
        r.fail(p + ".slot_offsets_ms: expected a nonempty array");
      } else {
        a.slot_offsets_ms.clear();
        for (const Json& v : ag->at("slot_offsets_ms")) {
          const double off = v.get<double>();
          if (off < 0.0) r.fail(p + ".slot_offsets_ms: offsets must be >= 0");
          a.slot_offsets_ms.push_back(off);
        }
      }
    }
  }

  if (const Json* th = r.section("threat")) {
    if (th->contains("sir")) {
      const Json& s = th->at("sir");
      const std::string p = "threat.sir";
      auto& sir = cfg.threat.sir;
      sir.p_inf = r.probability(s, p, "p_inf", sir.p_inf);
      sir.p_rec = r.probability(s, p, "p_rec", sir.p_rec);
      sir.tick_ms = r.positive(s, p, "tick_ms", sir.tick_ms);
      sir.contact = r.text(s, p, "contact", sir.contact);
      if (sir.contact != "shared_bs" && sir.contact != "explicit")
        r.fail(p + ".contact: must be 'shared_bs' or 'explicit'");
      if (s.contains("initial_infected")) {
        if (!s.at("initial_infected").is_array()) {
          r.fail(p + ".initial_infected: expected an array of UE ids");
        } else {
          for (const Json& v : s.at("initial_infected")) sir.initial_infected.push_back(v.get<int>());
        }
      }
      if (s.contains("edges")) {
        if (!s.at("edges").is_array()) {
          r.fail(p + ".edges: expected an array of [i,j] pairs");
        } else {
          for (const Json& e : s.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
              r.fail(p + ".edges: each edge must be [i,j]");
              continue;
            }
            sir.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
          }
        }
      }
      const int n = cfg.total_ues();
      for (int ue : sir.initial_infected) {
        if (ue < 0 || ue >= n)
          r.fail(p + ".initial_infected: UE id " + std::to_string(ue) + " out of range");
      }
    }
    if (th->contains("profiles")) {
      if (!th->at("profiles").is_array()) {
        r.fail("threat.profiles: expected an array");
      } else {
        int i = 0;
        for (const Json& pr : th->at("profiles")) {
          const std::string p = "threat.profiles[" + std::to_string(i++) + "]";
          AttackProfileConfig ap;
          const std::string kind = r.text(pr, p, "kind", "ddos");
          if (kind == "ddos") {
            ap.kind = AttackKind::Ddos;
          } else if (kind == "poisoning") {
            ap.kind = AttackKind::Poisoning;
          } else if (kind == "adversarial") {
            ap.kind = AttackKind::Adversarial;
          } else {
            r.fail(p + ".kind: unknown attack kind '" + kind + "'");
          }
          ap.intensity = r.non_negative(pr, p, "intensity", 0.0);
          if (ap.kind == AttackKind::Poisoning && ap.intensity > 1.0)
            r.fail(p + ".intensity: poisoning flip probability out of range [0,1]");
          if (ap.kind == AttackKind::Adversarial &&
              (ap.intensity != 0.0 && ap.intensity != 1.0 && ap.intensity != 2.0))
            r.fail(p + ".intensity: adversarial bucket shift must be 0, 1, or 2");
          ap.target_domain = static_cast<int>(r.number(pr, p, "target_domain", 0));
          ap.start_ms = r.non_negative(pr, p, "start_ms", 0.0);
          ap.end_ms = r.non_negative(pr, p, "end_ms", 0.0);
          if (ap.end_ms < ap.start_ms) r.fail(p + ".end_ms: must be >= start_ms");
          if (ap.kind == AttackKind::Ddos && ap.enabled()) {
            bool found = false;
            for (const auto& d : cfg.topology.domains) found |= (d.id == ap.target_domain);
            if (!found)
              r.fail(p + ".target_domain: unknown domain " + std::to_string(ap.target_domain));
          }
          cfg.threat.profiles.push_back(ap);
        }
      }
    }
  }

  if (const Json* rn = r.section("run")) {
    const std::string p = "run";
    auto& run = cfg.run;
    run.duration_ms = r.positive(*rn, p, "duration_ms", run.duration_ms);
    if (rn->contains("master_seed")) {
      if (!rn->at("master_seed").is_number_unsigned() && !rn->at("master_seed").is_number_integer())
        r.fail(p + ".master_seed: expected an unsigned integer");
      else
        run.master_seed = rn->at("master_seed").get<std::uint64_t>();
    }
    const std::string mode = r.text(*rn, p, "mode", "es3a");
    if (auto m = mode_from_string(mode)) {
      run.mode = *m;
    } else {
      r.fail(p + ".mode: must be one of es3a|centralized|dtm");
    }
    run.requests_per_ue_per_s = r.positive(*rn, p, "requests_per_ue_per_s", run.requests_per_ue_per_s);
    run.scale = r.positive(*rn, p, "scale", run.scale);
    run.background_pps = r.non_negative(*rn, p, "background_pps", run.background_pps);
    run.metric_sample_ms = r.positive(*rn, p, "metric_sample_ms", run.metric_sample_ms);
  } else {
    r.fail("run: section is required");
  }

  if (!r.errors().empty()) throw ValidationError(r.errors());
  return cfg;
}

inline ScenarioConfig parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  Json doc;
  try {
    in >> doc;
  } catch (const Json::parse_error& e) {
    throw IoError("cannot parse scenario file " + path + ": " + e.what());
  }
  return parse_scenario_json(doc);
}

/// Content digest of the canonicalized config. nlohmann::json keeps object
/// keys sorted, so dump() is already key-order independent.
inline std::string scenario_hash(const ScenarioConfig& cfg) {
  const std::uint64_t h = fnv1a64(cfg.raw.dump());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace es3a
