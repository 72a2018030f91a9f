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

#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "es3a/agent.hpp"
#include "es3a/auth.hpp"
#include "es3a/baselines.hpp"
#include "es3a/config.hpp"
#include "es3a/kernel.hpp"
#include "es3a/metrics.hpp"
#include "es3a/packet_filter.hpp"
#include "es3a/policy.hpp"
#include "es3a/threats.hpp"
#include "es3a/token.hpp"
#include "es3a/topology.hpp"
#include "es3a/trust.hpp"

namespace es3a {

class UnknownDomainError : public std::runtime_error {
 public:
  explicit UnknownDomainError(int domain_id)
      : std::runtime_error("policy references unknown domain " + std::to_string(domain_id)) {}
};

/// Applies a verified trust-context transfer: the target domain checks the
/// token under the issuer's key, seeds its store from the snapshot, and
/// takes over as the UE's serving domain. A token that fails verification
/// aborts the switch; the UE stays where it was.
inline bool apply_domain_switch(TrustSystem& trust, UeNode& ue, const TrustContextToken& token,
                                int to_domain, const DomainKey& issuer_key, double now,
                                double freshness_window_ms) {
  if (!teu_verify(token, issuer_key, now, freshness_window_ms)) return false;
  trust.seed_from_snapshot(token.ue_id, to_domain, token.alpha, token.beta, token.issued_at);
  ue.serving_domain = to_domain;
  return true;
}

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<ArchitectureMode> mode;
  std::optional<double> scale;
  std::string trace_path;        // stream the JSONL trace here when nonempty
  bool keep_trace = false;       // additionally keep the serialized trace in memory
  Json agent_checkpoint;         // when non-null: evaluation-only run (epsilon forced to 0)
};

struct RunResult {
  std::string scenario_hash;
  std::string topology_digest;
  std::uint64_t seed = 0;
  ArchitectureMode mode = ArchitectureMode::Es3a;
  double scale = 1.0;
  MetricsReport metrics;
  std::string trace_path;
  std::string trace_digest;      // fnv1a64 over the serialized JSONL trace
  std::vector<std::string> trace_lines;  // filled when keep_trace
  std::map<std::string, std::uint64_t> rng_draw_counts;
  Json agent_checkpoint;
  std::string trust_csv;
  std::uint64_t events_scheduled = 0;
  std::uint64_t events_processed = 0;
  bool ok = true;
  std::string error;
};

/// One isolated simulation instance: the deterministic kernel plus every
/// domain-side subsystem, wired through the two-stage orchestration flow
/// (Stage 1 policy generation, Stage 2 distribution and feedback).
class Simulation {
 public:
  Simulation(ScenarioConfig cfg, const RunOptions& opts) : cfg_(std::move(cfg)) {
    if (opts.seed) cfg_.run.master_seed = *opts.seed;
    if (opts.mode) cfg_.run.mode = *opts.mode;
    if (opts.scale) cfg_.run.scale = *opts.scale;
    mode_ = cfg_.run.mode;
    kernel_ = std::make_unique<SimKernel>(cfg_.run.master_seed);
    if (!opts.agent_checkpoint.is_null()) {
      AgentSection eval = cfg_.agent;
      eval.epsilon_start = 0.0;
      eval.epsilon_end = 0.0;
      agent_ = AgentModel(eval);
      agent_.restore(opts.agent_checkpoint);
    } else {
      agent_ = AgentModel(cfg_.agent);
    }
  }

  RunResult run(const RunOptions& opts) {
    RunResult result;
    result.scenario_hash = scenario_hash(cfg_);
    result.seed = cfg_.run.master_seed;
    result.mode = mode_;
    result.scale = cfg_.run.scale;

    setup();
    result.topology_digest = digest_string(topo_.dump().dump());

    std::ofstream trace_file;
    if (!opts.trace_path.empty()) {
      trace_file.open(opts.trace_path);
      if (!trace_file) throw IoError("cannot open trace output: " + opts.trace_path);
      result.trace_path = opts.trace_path;
    }
    std::uint64_t digest = 0xcbf29ce484222325ULL;
    kernel_->set_sink([&](const SimEvent& ev) {
      collector_.ingest(ev);
      const std::string line = to_jsonl(ev);
      digest = fnv1a64_continue(digest, line);
      digest = fnv1a64_continue(digest, "\n");
      if (trace_file.is_open()) trace_file << line << '\n';
      if (opts.keep_trace) result.trace_lines.push_back(line);
    });

    kernel_->run_until(cfg_.run.duration_ms);
    expire_pending_decisions();
    kernel_->run_until(cfg_.run.duration_ms);

    result.metrics = collector_.finish();
    result.trace_digest = hex64(digest);
    result.rng_draw_counts = kernel_->streams().draw_counts();
    result.agent_checkpoint = agent_.checkpoint();
    result.trust_csv = trust_.dump_csv();
    result.events_scheduled = kernel_->scheduled_count();
    result.events_processed = kernel_->processed_count();
    return result;
  }

  const Topology& topology() const { return topo_; }
  const SirModel& sir() const { return sir_; }

 private:
  struct PendingRequest {
    int ue_id = 0;
    double qf = 0.0;
    double request_time = 0.0;
    StateVector state;       // the observation the agent acted on
    int action_index = -1;   // -1 for rule-based modes
    int action_count = 0;
    SecurityPolicy policy;
  };

  static std::uint64_t fnv1a64_continue(std::uint64_t h, std::string_view bytes) {
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  static std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
  }

  static std::string digest_string(const std::string& s) { return hex64(fnv1a64(s)); }

  void setup() {
    RngStream& channel = kernel_->stream("channel");
    topo_ = build_topology(cfg_, channel);
    channel_model_ = ChannelModel(cfg_, topo_, channel);
    trust_ = TrustSystem(cfg_.trust, mode_);
    for (const auto& d : topo_.domains) {
      pools_.emplace(d.id, NfPool(d.nf_capacity, cfg_.services.nf_timeout_ms));
      domain_keys_.emplace(d.id, derive_domain_key(cfg_.run.master_seed, d.id));
      domain_ids_.push_back(d.id);
    }
    // Every UE starts with prior evidence in its home domain's store.
    for (const auto& u : topo_.ues) trust_.ensure_record(u.id, u.home_domain, 0.0);

    sir_active_ = !cfg_.threat.sir.initial_infected.empty() && !topo_.ues.empty();
    if (sir_active_) {
      sir_ = SirModel(cfg_.threat.sir, static_cast<int>(topo_.ues.size()));
      if (cfg_.threat.sir.contact == "shared_bs") {
        sir_.build_shared_bs_graph(topo_);
      } else {
        for (const auto& e : cfg_.threat.sir.edges) sir_.add_edge(e[0], e[1]);
      }
      for (auto& u : topo_.ues) u.infection = sir_.state(u.id);
    }

    kernel_->set_handler([this](SimEvent& ev) { handle(ev); });

    // Seed the event chains.
    RngStream& arrivals = kernel_->stream("arrivals");
    const double rate_per_ms =
        cfg_.run.requests_per_ue_per_s * cfg_.run.scale / 1000.0;
    for (const auto& u : topo_.ues) {
      const double first = arrivals.exponential(rate_per_ms);
      if (first <= cfg_.run.duration_ms)
        kernel_->schedule(first, EventKind::AccessRequest, AccessRequestPayload{next_request_id_++, u.id});
    }
    if (cfg_.run.background_pps > 0.0) {
      for (const auto& u : topo_.ues) {
        kernel_->schedule(cfg_.trust.filter_window_ms, EventKind::PacketArrival,
                          PacketArrivalPayload{u.id, u.home_domain, 0, false, false});
      }
    }
    if (sir_active_) {
      kernel_->schedule(cfg_.threat.sir.tick_ms, EventKind::SirTick, SirTickPayload{});
    }
    kernel_->schedule(cfg_.run.metric_sample_ms, EventKind::MetricSample, MetricSamplePayload{});
  }

  void handle(SimEvent& ev) {
    switch (ev.kind) {
      case EventKind::AccessRequest:
        on_access_request(ev.time, std::get<AccessRequestPayload>(ev.payload));
        break;
      case EventKind::PolicyDecision:
        on_policy_decision(ev.time, std::get<PolicyDecisionPayload>(ev.payload));
        break;
      case EventKind::DomainSwitch:
        on_domain_switch(ev.time, std::get<DomainSwitchPayload>(ev.payload));
        break;
      case EventKind::PolicyDistributed:
        on_policy_distributed(ev.time, std::get<PolicyDistributedPayload>(ev.payload));
        break;
      case EventKind::AuthComplete:
        on_auth_complete(ev.time, std::get<AuthCompletePayload>(ev.payload));
        break;
      case EventKind::PacketArrival:
        on_packet_arrival(ev.time, std::get<PacketArrivalPayload>(ev.payload));
        break;
      case EventKind::SirTick:
        on_sir_tick(ev.time, std::get<SirTickPayload>(ev.payload));
        break;
      case EventKind::FeedbackDelivered:
        on_feedback(ev.time, std::get<FeedbackDeliveredPayload>(ev.payload));
        break;
      case EventKind::MetricSample:
        on_metric_sample(ev.time, std::get<MetricSamplePayload>(ev.payload));
        break;
    }
  }

  MetricsWindow current_window(double now) {
    MetricsWindow w;
    w.domain_utilization.reserve(domain_ids_.size());
    for (int id : domain_ids_) w.domain_utilization.push_back(pools_.at(id).utilization(now));
    w.recent_mean_latency_ms = rolling_mean_latency();
    return w;
  }

  double rolling_mean_latency() const {
    if (recent_latencies_.empty()) return 0.0;
    double s = 0.0;
    for (double v : recent_latencies_) s += v;
    return s / static_cast<double>(recent_latencies_.size());
  }

  const AttackProfileConfig* profile_of(AttackKind kind) const {
    for (const auto& p : cfg_.threat.profiles)
      if (p.kind == kind && p.enabled()) return &p;
    return nullptr;
  }

  // --- Stage 1: policy generation -------------------------------------------

  void on_access_request(double now, const AccessRequestPayload& p) {
    UeNode& ue = topo_.ues[p.ue_id];

    // Channel conditions are sampled per access attempt, before any policy
    // logic, so the draw sequence is identical across architecture modes.
    const double q = channel_model_.sample(ue.id, ue.attached_bs, kernel_->stream("channel"));
    const double qf = q * ue.rf_fingerprint_quality;

    PendingRequest pending;
    pending.ue_id = ue.id;
    pending.qf = qf;
    pending.request_time = now;

    PolicyDecisionPayload decision;
    decision.request_id = p.request_id;
    decision.ue_id = ue.id;

    if (mode_ == ArchitectureMode::Centralized) {
      pending.policy = centralized_policy(ue, topo_, cfg_.trust.t_th);
      decision.overhead_ms = 0.0;
    } else {
      StateVector state = observe_state(ue, qf, current_window(now));
      if (const AttackProfileConfig* adv = profile_of(AttackKind::Adversarial)) {
        state = perturb_observation(state, *adv, now, [this, &ue](const StateVector& s) {
          const auto actions = enumerate_actions(ue.ue_class, mode_, ue.home_domain, domain_ids_,
                                                 cfg_.agent.slot_offsets_ms);
          const int a = agent_.greedy_action(s.key(), static_cast<int>(actions.size()));
          return agent_.q_value(s.key(), a);
        });
      }
      const auto actions = enumerate_actions(ue.ue_class, mode_, ue.home_domain, domain_ids_,
                                             cfg_.agent.slot_offsets_ms);
      const double progress = now / cfg_.run.duration_ms;
      const int chosen =
          agent_.select_action(state.key(), static_cast<int>(actions.size()), progress,
                               kernel_->stream("agent"));
      const AgentAction& act = actions[chosen];
      pending.state = state;
      pending.action_index = chosen;
      pending.action_count = static_cast<int>(actions.size());
      pending.policy = SecurityPolicy{ue.id, act.method, act.domain_id, act.slot_offset_ms,
                                      cfg_.trust.t_th};
      decision.overhead_ms =
          sample_latency(cfg_.services.orchestration_overhead, kernel_->stream("agent"));
      ++agent_decisions_;
    }

    decision.method = pending.policy.method;
    decision.domain_id = pending.policy.domain_id;
    decision.slot_offset_ms = pending.policy.slot_offset_ms;
    decision.t_th = pending.policy.t_th;
    pending_.emplace(p.request_id, std::move(pending));

    kernel_->schedule(now + decision.overhead_ms, EventKind::PolicyDecision, decision);

    // Self-perpetuating arrival chain.
    const double rate_per_ms = cfg_.run.requests_per_ue_per_s * cfg_.run.scale / 1000.0;
    const double next = now + kernel_->stream("arrivals").exponential(rate_per_ms);
    if (next <= cfg_.run.duration_ms)
      kernel_->schedule(next, EventKind::AccessRequest, AccessRequestPayload{next_request_id_++, ue.id});
  }

  // --- Stage 2: distribution -------------------------------------------------

  void on_policy_decision(double now, const PolicyDecisionPayload& p) {
    auto it = pending_.find(p.request_id);
    if (it == pending_.end()) return;
    const SecurityPolicy& policy = it->second.policy;
    if (!topo_.has_domain(policy.domain_id)) throw UnknownDomainError(policy.domain_id);

    UeNode& ue = topo_.ues[policy.ue_id];
    const bool crosses_domain = policy.domain_id != ue.serving_domain;
    if (crosses_domain) {
      kernel_->schedule(now, EventKind::DomainSwitch,
                        DomainSwitchPayload{ue.id, ue.serving_domain, policy.domain_id, false});
    }
    kernel_->schedule(now + policy.slot_offset_ms, EventKind::PolicyDistributed,
                      PolicyDistributedPayload{p.request_id, ue.id, policy.domain_id, crosses_domain});
  }

  void on_domain_switch(double now, DomainSwitchPayload& p) {
    UeNode& ue = topo_.ues[p.ue_id];
    const TrustRecord& rec = trust_.ensure_record(ue.id, p.from_domain, now);
    const TrustContextToken token = teu_issue(rec, p.from_domain, now, domain_keys_.at(p.from_domain));
    p.accepted = apply_domain_switch(trust_, ue, token, p.to_domain,
                                     domain_keys_.at(p.from_domain), now,
                                     cfg_.trust.token_freshness_ms);
  }

  void on_policy_distributed(double now, const PolicyDistributedPayload& p) {
    auto it = pending_.find(p.request_id);
    if (it == pending_.end()) return;
    PendingRequest& pending = it->second;
    const SecurityPolicy& policy = pending.policy;
    if (policy.domain_id != p.domain_id)
      throw PolicyDomainMismatchError(policy.domain_id, p.domain_id);

    UeNode& ue = topo_.ues[policy.ue_id];
    AuthCompletePayload outcome;
    outcome.request_id = p.request_id;
    outcome.ue_id = ue.id;
    outcome.domain_id = policy.domain_id;
    outcome.method = policy.method;

    const AccessDecision admission = trust_.check_access(ue.id, now, policy.t_th);
    if (!admission.allowed) {
      outcome.denied = true;
      outcome.success = false;
      outcome.latency_ms = 0.0;
      outcome.e2e_ms = now - pending.request_time;
      kernel_->schedule(now, EventKind::AuthComplete, outcome);
      return;
    }

    NfPool& pool = pools_.at(policy.domain_id);
    RngStream& latency = kernel_->stream("latency");
    AuthOutcome seu = policy.method == AuthMethod::Pls
                          ? pls_authenticate(cfg_.services, pool, policy.domain_id, now, pending.qf,
                                             latency)
                          : aka_authenticate(cfg_.services, pool, policy.domain_id, now, latency);
    outcome.method = seu.method_used;
    outcome.success = seu.success;
    outcome.timeout = seu.timeout;
    outcome.latency_ms = seu.latency_ms;
    outcome.e2e_ms = (now + seu.latency_ms) - pending.request_time;
    for (auto& bs : topo_.base_stations)
      if (bs.id == ue.attached_bs) ++bs.load;
    kernel_->schedule(now + seu.latency_ms, EventKind::AuthComplete, outcome);
  }

  // --- Outcomes and the feedback loop ---------------------------------------

  void on_auth_complete(double now, const AuthCompletePayload& p) {
    if (!p.denied) {
      recent_latencies_.push_back(p.latency_ms);
      if (recent_latencies_.size() > 100) recent_latencies_.pop_front();
      UeNode& ue = topo_.ues[p.ue_id];
      for (auto& bs : topo_.base_stations)
        if (bs.id == ue.attached_bs && bs.load > 0) --bs.load;
    }
    auto it = pending_.find(p.request_id);
    if (it == pending_.end()) return;
    if (it->second.action_index < 0) {
      pending_.erase(it);  // rule-based modes learn nothing
      return;
    }
    double reward = -p.latency_ms;
    if (p.timeout || p.denied) reward -= 1000.0;
    bool poisoned = false;
    if (const AttackProfileConfig* poison = profile_of(AttackKind::Poisoning))
      reward = poison_feedback(reward, *poison, now, kernel_->stream("poison"), &poisoned);
    kernel_->schedule(now, EventKind::FeedbackDelivered,
                      FeedbackDeliveredPayload{p.request_id, p.ue_id, reward, poisoned, false});
  }

  void on_feedback(double now, const FeedbackDeliveredPayload& p) {
    auto it = pending_.find(p.request_id);
    if (it == pending_.end()) throw OrphanOutcomeError(p.request_id);
    const PendingRequest& pending = it->second;
    if (!p.expired && pending.action_index >= 0) {
      const UeNode& ue = topo_.ues[pending.ue_id];
      // The successor observation reuses the request's channel sample;
      // no new draws, so stream alignment is mode independent.
      const StateVector next = observe_state(ue, pending.qf, current_window(now));
      agent_.update(pending.state.key(), pending.action_index, p.reward, next.key(),
                    pending.action_count);
    }
    ++feedbacks_;
    pending_.erase(it);
  }

  // --- Traffic, worms, and sampling ------------------------------------------

  void on_packet_arrival(double now, PacketArrivalPayload& p) {
    if (!p.malicious) {
      // Background chain: one batch per filter window per UE; the count is
      // drawn here. Infected devices do not emit normal traffic.
      const std::uint32_t drawn = kernel_->stream("traffic").poisson(
          cfg_.run.background_pps * cfg_.trust.filter_window_ms / 1000.0);
      const bool suppressed =
          sir_active_ && sir_.state(p.ue_id) == InfectionState::Infected;
      p.count = suppressed ? 0 : drawn;
      const double next = now + cfg_.trust.filter_window_ms;
      if (next <= cfg_.run.duration_ms)
        kernel_->schedule(next, EventKind::PacketArrival,
                          PacketArrivalPayload{p.ue_id, p.domain_id, 0, false, false});
    }
    if (p.count == 0) return;

    std::vector<Packet> batch(p.count, Packet{p.ue_id, p.malicious});
    const FilterResult res =
        filter_packets(trust_, p.domain_id, batch, now, cfg_.trust.filter_window_ms,
                       cfg_.trust.rate_cap_pps, cfg_.trust.t_th);
    p.passed = static_cast<std::uint32_t>(res.passed.size());
    p.dropped = static_cast<std::uint32_t>(res.dropped.size());
    p.violation = res.violated.at(p.ue_id);

    // Flood packets that get past the filter hit the NF service API and
    // burn a slot each; that is the resource-exhaustion path.
    if (p.nf_probe && p.passed > 0) {
      NfPool& pool = pools_.at(p.domain_id);
      for (std::uint32_t i = 0; i < p.passed; ++i)
        pool.submit(now, cfg_.services.ddos_packet_nf_ms);
    }
  }

  void on_sir_tick(double now, SirTickPayload& p) {
    sir_.step(kernel_->stream("sir"));
    for (auto& u : topo_.ues) u.infection = sir_.state(u.id);
    p.susceptible = sir_.count(InfectionState::Susceptible);
    p.infected = sir_.count(InfectionState::Infected);
    p.recovered = sir_.count(InfectionState::Recovered);

    for (const auto& profile : cfg_.threat.profiles) {
      if (profile.kind != AttackKind::Ddos || !profile.active_at(now)) continue;
      std::vector<int> infected;
      for (const auto& u : topo_.ues)
        if (u.infection == InfectionState::Infected) infected.push_back(u.id);
      for (const DdosBatch& b :
           ddos_generate(infected, profile, now, cfg_.threat.sir.tick_ms, kernel_->stream("ddos"))) {
        kernel_->schedule(now, EventKind::PacketArrival,
                          PacketArrivalPayload{b.ue_id, b.target_domain, b.count, true, true});
      }
    }

    const double next = now + cfg_.threat.sir.tick_ms;
    if (next <= cfg_.run.duration_ms)
      kernel_->schedule(next, EventKind::SirTick, SirTickPayload{});
  }

  void on_metric_sample(double now, MetricSamplePayload& p) {
    for (int id : domain_ids_) {
      NfPool& pool = pools_.at(id);
      pool.prune(now);
      p.domain_utilization.push_back(pool.utilization(now));
    }
    p.rolling_mean_latency_ms = rolling_mean_latency();
    const double next = now + cfg_.run.metric_sample_ms;
    if (next <= cfg_.run.duration_ms)
      kernel_->schedule(next, EventKind::MetricSample, MetricSamplePayload{});
  }

  /// Every agent decision gets exactly one feedback; decisions still in
  /// flight when the run ends are closed with an explicit expiry event.
  void expire_pending_decisions() {
    const double t_end = cfg_.run.duration_ms;
    for (const auto& [request_id, pending] : pending_) {
      if (pending.action_index < 0) continue;
      kernel_->schedule(t_end, EventKind::FeedbackDelivered,
                        FeedbackDeliveredPayload{request_id, pending.ue_id, 0.0, false, true});
    }
  }

  ScenarioConfig cfg_;
  ArchitectureMode mode_ = ArchitectureMode::Es3a;
  std::unique_ptr<SimKernel> kernel_;
  Topology topo_;
  ChannelModel channel_model_;
  TrustSystem trust_;
  AgentModel agent_;
  SirModel sir_;
  bool sir_active_ = false;
  std::map<int, NfPool> pools_;
  std::map<int, DomainKey> domain_keys_;
  std::vector<int> domain_ids_;
  MetricsCollector collector_;
  std::map<std::uint64_t, PendingRequest> pending_;
  std::deque<double> recent_latencies_;
  std::uint64_t next_request_id_ = 0;
  std::uint64_t agent_decisions_ = 0;
  std::uint64_t feedbacks_ = 0;
};

/// Runs one scenario cell. Deterministic in (config, seed, mode, scale).
inline RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {}) {
  Simulation sim(cfg, opts);
  return sim.run(opts);
}

}  // namespace es3a
