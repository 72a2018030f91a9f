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
#include <stdexcept>

#include "es3a/config.hpp"
#include "es3a/events.hpp"
#include "es3a/nf_pool.hpp"
#include "es3a/rng.hpp"
#include "es3a/topology.hpp"

namespace es3a {

/// Terminal result of one access request.
struct AuthOutcome {
  AuthMethod method_used = AuthMethod::Aka;
  bool success = false;
  bool timeout = false;
  double latency_ms = 0.0;  // queue wait + attempt + service
  int domain_id = 0;
};

inline double sample_latency(const LatencySpec& spec, RngStream& rng) {
  if (spec.stddev <= 0.0) return std::max(spec.mean, spec.min);
  return rng.truncated_normal(spec.mean, spec.stddev, spec.min);
}

/// PLS success probability: logistic gate in channel quality times
/// fingerprint quality, sigma(a * (q*f - theta)). Overflow-safe for large
/// sharpness so the hard-gate limit behaves.
inline double pls_success_probability(double qf, double sharpness, double threshold) {
  const double x = sharpness * (qf - threshold);
  if (x >= 40.0) return 1.0;
  if (x <= -40.0) return 0.0;
  return 1.0 / (1.0 + std::exp(-x));
}

/// Cryptographic AKA: always verifies an honest identity (behavior is the
/// trust engine's concern, not AKA's); the cost is a core-network round trip.
/// Latency = RAN RTT + core RTT + processing, each sampled, plus queueing in
/// the domain's NF pool. A wait beyond the pool timeout yields an explicit
/// Timeout outcome.
inline AuthOutcome aka_authenticate(const ServicesSection& svc, NfPool& pool, int domain_id,
                                    double now, RngStream& latency_rng) {
  const double service = sample_latency(svc.aka_ran_rtt, latency_rng) +
                         sample_latency(svc.aka_core_rtt, latency_rng) +
                         sample_latency(svc.aka_proc, latency_rng);
  AuthOutcome out;
  out.domain_id = domain_id;
  out.method_used = AuthMethod::Aka;
  const NfAdmission adm = pool.submit(now, service);
  if (adm.timed_out) {
    out.timeout = true;
    out.latency_ms = adm.wait;
    return out;
  }
  out.success = true;
  out.latency_ms = adm.wait + service;
  return out;
}

/// Physical-layer authentication with automatic cryptographic fallback.
/// Success is gated on the sampled channel quality times the UE's radio
/// fingerprint quality; on failure the request continues into AKA in the
/// same NF slot, so the fallback pays the PLS attempt plus the full AKA
/// service time.
inline AuthOutcome pls_authenticate(const ServicesSection& svc, NfPool& pool, int domain_id,
                                    double now, double qf, RngStream& latency_rng) {
  AuthOutcome out;
  out.domain_id = domain_id;
  const double p = pls_success_probability(qf, svc.pls_gate_sharpness, svc.pls_gate_threshold);
  const bool gate_ok = latency_rng.bernoulli(p);
  double service;
  if (gate_ok) {
    out.method_used = AuthMethod::Pls;
    service = sample_latency(svc.pls_success, latency_rng);
  } else {
    out.method_used = AuthMethod::PlsFallbackAka;
    service = sample_latency(svc.pls_attempt, latency_rng) +
              sample_latency(svc.aka_ran_rtt, latency_rng) +
              sample_latency(svc.aka_core_rtt, latency_rng) +
              sample_latency(svc.aka_proc, latency_rng);
  }
  const NfAdmission adm = pool.submit(now, service);
  if (adm.timed_out) {
    out.timeout = true;
    out.latency_ms = adm.wait;
    return out;
  }
  out.success = true;
  out.latency_ms = adm.wait + service;
  return out;
}

class PolicyDomainMismatchError : public std::logic_error {
 public:
  PolicyDomainMismatchError(int policy_domain, int executing_domain)
      : std::logic_error("policy targets domain " + std::to_string(policy_domain) +
                         " but executes in domain " + std::to_string(executing_domain)) {}
};

}  // namespace es3a
