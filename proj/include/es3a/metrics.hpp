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
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "es3a/events.hpp"

namespace es3a {

inline double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double percentile_of(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double rank = p * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(rank);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

struct SirSample {
  double time = 0.0;
  int susceptible = 0;
  int infected = 0;
  int recovered = 0;
};

struct LoadSample {
  double time = 0.0;
  std::vector<double> domain_utilization;
};

/// One authentication latency sample, kept raw so every aggregate can be
/// recomputed (and recounted from the serialized trace).
struct LatencySample {
  double time = 0.0;
  int ue_id = 0;
  AuthMethod method = AuthMethod::Aka;
  bool success = false;
  bool timeout = false;
  double latency_ms = 0.0;
  double e2e_ms = 0.0;
};

struct MetricsReport {
  // Raw samples.
  std::vector<LatencySample> auth_samples;   // admitted requests (denied excluded)
  std::vector<double> orch_overhead_samples;
  std::vector<SirSample> sir_series;
  std::vector<LoadSample> load_series;

  // Packet filtering counters (ground truth is scoring-only). An honest UE
  // is one that never sourced a malicious-flagged packet during the run,
  // which is recomputable from the serialized trace.
  std::uint64_t malicious_total = 0;
  std::uint64_t malicious_dropped = 0;
  std::uint64_t honest_total = 0;
  std::uint64_t honest_dropped = 0;
  std::uint64_t benign_total = 0;    // all benign-flagged packets
  std::uint64_t benign_dropped = 0;
  std::map<int, std::pair<std::uint64_t, std::uint64_t>> benign_per_ue;  // ue -> (total, dropped)
  std::set<int> attack_sources;

  std::uint64_t requests = 0;
  std::uint64_t denied = 0;
  std::uint64_t timeouts = 0;
  std::map<std::string, std::uint64_t> assignments_per_domain;

  // Aggregates (always recomputable from the raw samples above).
  double mean_latency_ms = 0.0;
  double median_latency_ms = 0.0;
  double p95_latency_ms = 0.0;
  double mean_orch_overhead_ms = 0.0;
  double mean_pls_success_latency_ms = 0.0;
  double pls_within_10ms_fraction = 0.0;
  double mean_aka_latency_ms = 0.0;
  double filtering_rate = 1.0;   // 1.0 by convention when nothing malicious was sent
  bool filtering_rate_vacuous = true;
  double honest_drop_rate = 0.0;
  double benign_drop_rate = 0.0;

  void finalize() {
    std::vector<double> lat, pls, aka;
    std::uint64_t pls_fast = 0;
    for (const auto& s : auth_samples) {
      lat.push_back(s.latency_ms);
      // The uRLLC line applies to the authentication path itself (queue wait
      // plus PLS service); orchestration overhead is control-plane and is
      // reported as its own metric.
      if (s.method == AuthMethod::Pls && s.success) {
        pls.push_back(s.latency_ms);
        if (s.latency_ms <= 10.0) ++pls_fast;
      }
      if (s.method == AuthMethod::Aka && s.success) aka.push_back(s.latency_ms);
    }
    mean_latency_ms = mean_of(lat);
    median_latency_ms = percentile_of(lat, 0.5);
    p95_latency_ms = percentile_of(lat, 0.95);
    mean_orch_overhead_ms = mean_of(orch_overhead_samples);
    mean_pls_success_latency_ms = mean_of(pls);
    pls_within_10ms_fraction = pls.empty() ? 0.0 : static_cast<double>(pls_fast) / pls.size();
    mean_aka_latency_ms = mean_of(aka);
    filtering_rate_vacuous = malicious_total == 0;
    filtering_rate = filtering_rate_vacuous
                         ? 1.0
                         : static_cast<double>(malicious_dropped) / static_cast<double>(malicious_total);
    honest_total = honest_dropped = 0;
    for (const auto& [ue, counts] : benign_per_ue) {
      if (attack_sources.count(ue)) continue;
      honest_total += counts.first;
      honest_dropped += counts.second;
    }
    honest_drop_rate =
        honest_total == 0 ? 0.0 : static_cast<double>(honest_dropped) / static_cast<double>(honest_total);
    benign_drop_rate =
        benign_total == 0 ? 0.0 : static_cast<double>(benign_dropped) / static_cast<double>(benign_total);
  }

  Json to_json() const {
    Json sir = Json::array();
    for (const auto& s : sir_series)
      sir.push_back(Json{{"time", s.time}, {"s", s.susceptible}, {"i", s.infected}, {"r", s.recovered}});
    Json loads = Json::array();
    for (const auto& s : load_series)
      loads.push_back(Json{{"time", s.time}, {"utilization", s.domain_utilization}});
    return Json{
        {"requests", requests},
        {"denied", denied},
        {"timeouts", timeouts},
        {"auth_samples", auth_samples.size()},
        {"mean_latency_ms", mean_latency_ms},
        {"median_latency_ms", median_latency_ms},
        {"p95_latency_ms", p95_latency_ms},
        {"mean_orch_overhead_ms", mean_orch_overhead_ms},
        {"orch_overhead_samples", orch_overhead_samples.size()},
        {"mean_pls_success_latency_ms", mean_pls_success_latency_ms},
        {"pls_within_10ms_fraction", pls_within_10ms_fraction},
        {"mean_aka_latency_ms", mean_aka_latency_ms},
        {"filtering_rate", filtering_rate},
        {"filtering_rate_vacuous", filtering_rate_vacuous},
        {"honest_drop_rate", honest_drop_rate},
        {"benign_drop_rate", benign_drop_rate},
        {"malicious_total", malicious_total},
        {"malicious_dropped", malicious_dropped},
        {"honest_total", honest_total},
        {"honest_dropped", honest_dropped},
        {"assignments_per_domain", assignments_per_domain},
        {"sir_series", sir},
        {"load_series", loads},
    };
  }

  /// Plot-ready CSV of the raw latency samples.
  std::string samples_csv() const {
    std::ostringstream os;
    os << "time_ms,ue_id,method,success,timeout,latency_ms,e2e_ms\n";
    for (const auto& s : auth_samples) {
      os << s.time << ',' << s.ue_id << ',' << to_string(s.method) << ',' << (s.success ? 1 : 0)
         << ',' << (s.timeout ? 1 : 0) << ',' << s.latency_ms << ',' << s.e2e_ms << '\n';
    }
    return os.str();
  }
};

/// Incremental metric collection over processed events. The same ingestion
/// runs either live (as the kernel's sink) or as a post-pass over a
/// deserialized JSONL trace, which is what makes the trace-replay oracle
/// possible.
class MetricsCollector {
 public:
  MetricsCollector() = default;

  void ingest(const SimEvent& ev) {
    switch (ev.kind) {
      case EventKind::AccessRequest:
        ++report_.requests;
        break;
      case EventKind::PolicyDecision: {
        const auto& p = std::get<PolicyDecisionPayload>(ev.payload);
        if (p.overhead_ms > 0.0) report_.orch_overhead_samples.push_back(p.overhead_ms);
        ++report_.assignments_per_domain[std::to_string(p.domain_id)];
        break;
      }
      case EventKind::AuthComplete: {
        const auto& p = std::get<AuthCompletePayload>(ev.payload);
        if (p.denied) {
          ++report_.denied;
          break;
        }
        if (p.timeout) ++report_.timeouts;
        report_.auth_samples.push_back(
            {ev.time, p.ue_id, p.method, p.success, p.timeout, p.latency_ms, p.e2e_ms});
        break;
      }
      case EventKind::PacketArrival: {
        const auto& p = std::get<PacketArrivalPayload>(ev.payload);
        if (p.malicious) {
          report_.malicious_total += p.count;
          report_.malicious_dropped += p.dropped;
          report_.attack_sources.insert(p.ue_id);
        } else {
          report_.benign_total += p.count;
          report_.benign_dropped += p.dropped;
          auto& per_ue = report_.benign_per_ue[p.ue_id];
          per_ue.first += p.count;
          per_ue.second += p.dropped;
        }
        break;
      }
      case EventKind::SirTick: {
        const auto& p = std::get<SirTickPayload>(ev.payload);
        report_.sir_series.push_back({ev.time, p.susceptible, p.infected, p.recovered});
        break;
      }
      case EventKind::MetricSample: {
        const auto& p = std::get<MetricSamplePayload>(ev.payload);
        report_.load_series.push_back({ev.time, p.domain_utilization});
        break;
      }
      default:
        break;
    }
  }

  MetricsReport finish() {
    report_.finalize();
    return report_;
  }

 private:
  MetricsReport report_;
};

/// Re-derives a MetricsReport from a serialized event trace (one JSON event
/// per line). Used by the replay subcommand and as the aggregate oracle.
inline MetricsReport collect_from_jsonl(std::istream& in) {
  MetricsCollector collector;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    collector.ingest(event_from_json(Json::parse(line)));
  }
  return collector.finish();
}

}  // namespace es3a
