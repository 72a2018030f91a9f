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
#include <variant>
#include <vector>

#include <json.hpp>

namespace es3a {

using Json = nlohmann::json;

/// Simulation time in milliseconds.
using TimeMs = double;

enum class EventKind : std::uint8_t {
  AccessRequest,
  AuthComplete,
  PacketArrival,
  SirTick,
  PolicyDecision,
  PolicyDistributed,
  FeedbackDelivered,
  DomainSwitch,
  MetricSample,
};

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::AccessRequest: return "AccessRequest";
    case EventKind::AuthComplete: return "AuthComplete";
    case EventKind::PacketArrival: return "PacketArrival";
    case EventKind::SirTick: return "SirTick";
    case EventKind::PolicyDecision: return "PolicyDecision";
    case EventKind::PolicyDistributed: return "PolicyDistributed";
    case EventKind::FeedbackDelivered: return "FeedbackDelivered";
    case EventKind::DomainSwitch: return "DomainSwitch";
    case EventKind::MetricSample: return "MetricSample";
  }
  return "Unknown";
}

enum class AuthMethod : std::uint8_t { Aka, Pls, PlsFallbackAka };

inline const char* to_string(AuthMethod m) {
  switch (m) {
    case AuthMethod::Aka: return "AKA";
    case AuthMethod::Pls: return "PLS";
    case AuthMethod::PlsFallbackAka: return "PLS_FallbackAKA";
  }
  return "Unknown";
}

// --- Event payloads ---------------------------------------------------------

struct AccessRequestPayload {
  std::uint64_t request_id = 0;
  int ue_id = 0;
};

struct AuthCompletePayload {
  std::uint64_t request_id = 0;
  int ue_id = 0;
  AuthMethod method = AuthMethod::Aka;
  bool success = false;
  bool timeout = false;
  bool denied = false;
  int domain_id = 0;
  double latency_ms = 0.0;   // SEU-path latency: queue wait + attempt + service
  double e2e_ms = 0.0;       // completion time minus request time
};

struct PacketArrivalPayload {
  int ue_id = 0;
  int domain_id = 0;
  std::uint32_t count = 0;
  bool nf_probe = false;    // packet hits the domain's NF service API (vs data plane)
  bool malicious = false;   // ground truth; visible to metrics only
  // Filled in by the packet filter when the event is processed.
  std::uint32_t passed = 0;
  std::uint32_t dropped = 0;
  bool violation = false;   // batch exceeded the per-UE rate cap
};

struct SirTickPayload {
  int susceptible = 0;
  int infected = 0;
  int recovered = 0;
};

struct PolicyDecisionPayload {
  std::uint64_t request_id = 0;
  int ue_id = 0;
  AuthMethod method = AuthMethod::Aka;
  int domain_id = 0;
  double slot_offset_ms = 0.0;
  double t_th = 0.0;
  double overhead_ms = 0.0;  // orchestration processing time, 0 for rule-based modes
};

struct PolicyDistributedPayload {
  std::uint64_t request_id = 0;
  int ue_id = 0;
  int domain_id = 0;
  bool carries_token = false;
};

struct FeedbackDeliveredPayload {
  std::uint64_t request_id = 0;
  int ue_id = 0;
  double reward = 0.0;
  bool poisoned = false;
  bool expired = false;   // decision outstanding at end of run
};

struct DomainSwitchPayload {
  int ue_id = 0;
  int from_domain = 0;
  int to_domain = 0;
  bool accepted = false;
};

struct MetricSamplePayload {
  std::vector<double> domain_utilization;  // indexed by domain order in topology
  double rolling_mean_latency_ms = 0.0;
};

using EventPayload =
    std::variant<AccessRequestPayload, AuthCompletePayload, PacketArrivalPayload, SirTickPayload,
                 PolicyDecisionPayload, PolicyDistributedPayload, FeedbackDeliveredPayload,
                 DomainSwitchPayload, MetricSamplePayload>;

struct SimEvent {
  TimeMs time = 0.0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::AccessRequest;
  EventPayload payload;
};

// --- JSON serialization (one event per JSONL trace line) --------------------

inline Json to_json(const AccessRequestPayload& p) {
  return Json{{"request_id", p.request_id}, {"ue", p.ue_id}};
}

inline Json to_json(const AuthCompletePayload& p) {
  return Json{{"request_id", p.request_id}, {"ue", p.ue_id},     {"method", to_string(p.method)},
              {"success", p.success},       {"timeout", p.timeout}, {"denied", p.denied},
              {"domain", p.domain_id},      {"latency_ms", p.latency_ms}, {"e2e_ms", p.e2e_ms}};
}

inline Json to_json(const PacketArrivalPayload& p) {
  return Json{{"ue", p.ue_id},       {"domain", p.domain_id}, {"count", p.count},
              {"nf_probe", p.nf_probe}, {"malicious", p.malicious}, {"passed", p.passed},
              {"dropped", p.dropped}, {"violation", p.violation}};
}

inline Json to_json(const SirTickPayload& p) {
  return Json{{"s", p.susceptible}, {"i", p.infected}, {"r", p.recovered}};
}

inline Json to_json(const PolicyDecisionPayload& p) {
  return Json{{"request_id", p.request_id}, {"ue", p.ue_id},
              {"method", to_string(p.method)}, {"domain", p.domain_id},
              {"slot_offset_ms", p.slot_offset_ms}, {"t_th", p.t_th},
              {"overhead_ms", p.overhead_ms}};
}

inline Json to_json(const PolicyDistributedPayload& p) {
  return Json{{"request_id", p.request_id}, {"ue", p.ue_id}, {"domain", p.domain_id},
              {"carries_token", p.carries_token}};
}

inline Json to_json(const FeedbackDeliveredPayload& p) {
  return Json{{"request_id", p.request_id}, {"ue", p.ue_id}, {"reward", p.reward},
              {"poisoned", p.poisoned}, {"expired", p.expired}};
}

inline Json to_json(const DomainSwitchPayload& p) {
  return Json{{"ue", p.ue_id}, {"from", p.from_domain}, {"to", p.to_domain},
              {"accepted", p.accepted}};
}

inline Json to_json(const MetricSamplePayload& p) {
  return Json{{"domain_utilization", p.domain_utilization},
              {"rolling_mean_latency_ms", p.rolling_mean_latency_ms}};
}

inline Json to_json(const SimEvent& ev) {
  Json payload = std::visit([](const auto& p) { return to_json(p); }, ev.payload);
  return Json{{"time", ev.time}, {"seq", ev.seq}, {"kind", to_string(ev.kind)},
              {"payload", std::move(payload)}};
}

inline std::string to_jsonl(const SimEvent& ev) { return to_json(ev).dump(); }

// --- JSONL parsing (trace replay) -------------------------------------------

inline AuthMethod auth_method_from_string(const std::string& s) {
  if (s == "AKA") return AuthMethod::Aka;
  if (s == "PLS") return AuthMethod::Pls;
  if (s == "PLS_FallbackAKA") return AuthMethod::PlsFallbackAka;
  throw std::invalid_argument("unknown auth method: " + s);
}

inline SimEvent event_from_json(const Json& j) {
  SimEvent ev;
  ev.time = j.at("time").get<double>();
  ev.seq = j.at("seq").get<std::uint64_t>();
  const std::string kind = j.at("kind").get<std::string>();
  const Json& p = j.at("payload");
  if (kind == "AccessRequest") {
    ev.kind = EventKind::AccessRequest;
    ev.payload = AccessRequestPayload{p.at("request_id").get<std::uint64_t>(), p.at("ue").get<int>()};
  } else if (kind == "AuthComplete") {
    ev.kind = EventKind::AuthComplete;
    AuthCompletePayload a;
    a.request_id = p.at("request_id").get<std::uint64_t>();
    a.ue_id = p.at("ue").get<int>();
    a.method = auth_method_from_string(p.at("method").get<std::string>());
    a.success = p.at("success").get<bool>();
    a.timeout = p.at("timeout").get<bool>();
    a.denied = p.at("denied").get<bool>();
    a.domain_id = p.at("domain").get<int>();
    a.latency_ms = p.at("latency_ms").get<double>();
    a.e2e_ms = p.at("e2e_ms").get<double>();
    ev.payload = a;
  } else if (kind == "PacketArrival") {
    ev.kind = EventKind::PacketArrival;
    PacketArrivalPayload a;
    a.ue_id = p.at("ue").get<int>();
    a.domain_id = p.at("domain").get<int>();
    a.count = p.at("count").get<std::uint32_t>();
    a.nf_probe = p.at("nf_probe").get<bool>();
    a.malicious = p.at("malicious").get<bool>();
    a.passed = p.at("passed").get<std::uint32_t>();
    a.dropped = p.at("dropped").get<std::uint32_t>();
    a.violation = p.at("violation").get<bool>();
    ev.payload = a;
  } else if (kind == "SirTick") {
    ev.kind = EventKind::SirTick;
    ev.payload = SirTickPayload{p.at("s").get<int>(), p.at("i").get<int>(), p.at("r").get<int>()};
  } else if (kind == "PolicyDecision") {
    ev.kind = EventKind::PolicyDecision;
    PolicyDecisionPayload a;
    a.request_id = p.at("request_id").get<std::uint64_t>();
    a.ue_id = p.at("ue").get<int>();
    a.method = auth_method_from_string(p.at("method").get<std::string>());
    a.domain_id = p.at("domain").get<int>();
    a.slot_offset_ms = p.at("slot_offset_ms").get<double>();
    a.t_th = p.at("t_th").get<double>();
    a.overhead_ms = p.at("overhead_ms").get<double>();
    ev.payload = a;
  } else if (kind == "PolicyDistributed") {
    ev.kind = EventKind::PolicyDistributed;
    ev.payload = PolicyDistributedPayload{p.at("request_id").get<std::uint64_t>(), p.at("ue").get<int>(),
                                          p.at("domain").get<int>(), p.at("carries_token").get<bool>()};
  } else if (kind == "FeedbackDelivered") {
    ev.kind = EventKind::FeedbackDelivered;
    ev.payload = FeedbackDeliveredPayload{p.at("request_id").get<std::uint64_t>(), p.at("ue").get<int>(),
                                          p.at("reward").get<double>(), p.at("poisoned").get<bool>(),
                                          p.at("expired").get<bool>()};
  } else if (kind == "DomainSwitch") {
    ev.kind = EventKind::DomainSwitch;
    ev.payload = DomainSwitchPayload{p.at("ue").get<int>(), p.at("from").get<int>(),
                                     p.at("to").get<int>(), p.at("accepted").get<bool>()};
  } else if (kind == "MetricSample") {
    ev.kind = EventKind::MetricSample;
    MetricSamplePayload a;
    a.domain_utilization = p.at("domain_utilization").get<std::vector<double>>();
    a.rolling_mean_latency_ms = p.at("rolling_mean_latency_ms").get<double>();
    ev.payload = a;
  } else {
    throw std::invalid_argument("unknown event kind: " + kind);
  }
  return ev;
}

}  // namespace es3a
