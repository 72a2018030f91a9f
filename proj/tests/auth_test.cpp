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

#include <catch2/catch_amalgamated.hpp>

#include "es3a/auth.hpp"
#include "es3a/nf_pool.hpp"

using namespace es3a;

namespace {

ServicesSection zero_variance_services() {
  ServicesSection svc;
  svc.aka_ran_rtt = {4.0, 0.0, 0.0};
  svc.aka_core_rtt = {12.0, 0.0, 0.0};
  svc.aka_proc = {4.0, 0.0, 0.0};
  svc.pls_success = {8.6, 0.0, 0.0};
  svc.pls_attempt = {4.0, 0.0, 0.0};
  return svc;
}

}  // namespace

TEST_CASE("AKA with zero-variance components sums the configured means") {
  ServicesSection svc = zero_variance_services();
  NfPool pool(4, 500.0);
  RngStream rng("latency", 1);
  const AuthOutcome out = aka_authenticate(svc, pool, 1, 0.0, rng);
  CHECK(out.success);
  CHECK(out.method_used == AuthMethod::Aka);
  CHECK_THAT(out.latency_ms, Catch::Matchers::WithinAbs(20.0, 1e-12));
}

TEST_CASE("AKA verifies identity regardless of behavior state") {
  // An infected UE's AKA still succeeds; misbehavior is the trust engine's
  // concern. The SEU takes no infection input at all, which is the point.
  ServicesSection svc = zero_variance_services();
  NfPool pool(4, 500.0);
  RngStream rng("latency", 2);
  for (int i = 0; i < 10; ++i) CHECK(aka_authenticate(svc, pool, 1, 1000.0 * i, rng).success);
}

TEST_CASE("full pool queues FIFO and adds the wait to latency") {
  ServicesSection svc = zero_variance_services();
  // Single-server hand trace: one 10 ms job in flight, the next request
  // waits for the slot.
  NfPool pool(1, 500.0);
  RngStream rng("latency", 3);
  CHECK_FALSE(pool.submit(0.0, 10.0).timed_out);
  const AuthOutcome out = aka_authenticate(svc, pool, 1, 2.0, rng);
  CHECK(out.success);
  CHECK_THAT(out.latency_ms, Catch::Matchers::WithinAbs(8.0 + 20.0, 1e-12));
}

TEST_CASE("waits beyond the bound produce explicit Timeout outcomes") {
  ServicesSection svc = zero_variance_services();
  NfPool pool(1, 500.0);
  RngStream rng("latency", 4);
  CHECK_FALSE(pool.submit(0.0, 600.0).timed_out);
  const AuthOutcome out = aka_authenticate(svc, pool, 1, 0.0, rng);
  CHECK_FALSE(out.success);
  CHECK(out.timeout);
  CHECK(out.latency_ms == 500.0);
  // The timed-out request never held a slot.
  CHECK(pool.in_use(100.0) == 1);
}

TEST_CASE("pls gate limits") {
  ServicesSection svc = zero_variance_services();
  svc.pls_gate_sharpness = 1e9;  // hard gate
  RngStream rng("latency", 5);
  SECTION("perfect channel always succeeds") {
    NfPool pool(4, 500.0);
    for (int i = 0; i < 50; ++i) {
      const AuthOutcome out = pls_authenticate(svc, pool, 1, 100.0 * i, 1.0, rng);
      CHECK(out.method_used == AuthMethod::Pls);
      CHECK_THAT(out.latency_ms, Catch::Matchers::WithinAbs(8.6, 1e-12));
    }
  }
  SECTION("below-threshold channel always falls back to AKA") {
    NfPool pool(4, 500.0);
    for (int i = 0; i < 50; ++i) {
      const AuthOutcome out = pls_authenticate(svc, pool, 1, 100.0 * i, 0.3, rng);
      CHECK(out.method_used == AuthMethod::PlsFallbackAka);
      CHECK(out.success);
      // Attempt time plus the full AKA chain.
      CHECK_THAT(out.latency_ms, Catch::Matchers::WithinAbs(4.0 + 20.0, 1e-12));
    }
  }
}

TEST_CASE("gate probability is logistic in q*f") {
  CHECK_THAT(pls_success_probability(0.5, 10.0, 0.5), Catch::Matchers::WithinAbs(0.5, 1e-12));
  CHECK(pls_success_probability(0.9, 10.0, 0.5) > 0.96);
  CHECK(pls_success_probability(0.1, 10.0, 0.5) < 0.02);
  // Overflow-safe in the hard-gate limit.
  CHECK(pls_success_probability(1.0, 1e18, 0.5) == 1.0);
  CHECK(pls_success_probability(0.0, 1e18, 0.5) == 0.0);
}

TEST_CASE("default calibration: successful-PLS latency averages 8.6 ms") {
  ServicesSection svc;  // stochastic defaults
  NfPool pool(1 << 20, 500.0);
  RngStream rng("latency", 42);
  double sum = 0.0;
  int n = 0;
  double t = 0.0;
  while (n < 10000) {
    t += 1000.0;
    const AuthOutcome out = pls_authenticate(svc, pool, 1, t, 0.95, rng);
    if (out.method_used == AuthMethod::Pls) {
      sum += out.latency_ms;
      ++n;
    }
  }
  CHECK_THAT(sum / n, Catch::Matchers::WithinAbs(8.6, 0.5));
}

TEST_CASE("AKA latency dominates successful PLS in expectation") {
  ServicesSection svc;
  NfPool pool(1 << 20, 500.0);
  RngStream rng("latency", 43);
  double aka = 0.0, pls = 0.0;
  int n_aka = 0, n_pls = 0;
  double t = 0.0;
  for (int i = 0; i < 20000; ++i) {
    t += 1000.0;
    const AuthOutcome a = aka_authenticate(svc, pool, 1, t, rng);
    aka += a.latency_ms;
    ++n_aka;
    const AuthOutcome p = pls_authenticate(svc, pool, 1, t, 0.95, rng);
    if (p.method_used == AuthMethod::Pls) {
      pls += p.latency_ms;
      ++n_pls;
    }
  }
  CHECK(aka / n_aka > pls / n_pls);
}

TEST_CASE("pool resource accounting conserves acquires minus releases") {
  NfPool pool(4, 500.0);
  pool.submit(0.0, 10.0);
  pool.submit(2.0, 10.0);
  pool.submit(3.0, 30.0);
  CHECK(pool.in_use(5.0) == 3);
  CHECK(pool.started_minus_finished(5.0) == 3);
  CHECK(pool.in_use(11.0) == 2);  // first job done
  CHECK(pool.started_minus_finished(11.0) == 2);
  CHECK(pool.in_use(50.0) == 0);
  CHECK(pool.started_minus_finished(50.0) == 0);
  CHECK(pool.submitted() == 3);
  CHECK(pool.admitted() == 3);
  CHECK(pool.timeouts() == 0);
  // in_use never exceeds capacity.
  for (double t = 0.0; t < 40.0; t += 0.5) CHECK(pool.in_use(t) <= pool.capacity());
}

TEST_CASE("queued jobs keep FIFO order under load") {
  NfPool pool(1, 500.0);
  const NfAdmission a = pool.submit(0.0, 10.0);
  const NfAdmission b = pool.submit(1.0, 10.0);
  const NfAdmission c = pool.submit(2.0, 10.0);
  CHECK(a.start == 0.0);
  CHECK(b.start == 10.0);
  CHECK(c.start == 20.0);
  CHECK(b.wait == 9.0);
  CHECK(c.wait == 18.0);
}

TEST_CASE("policy domain mismatch error carries both ids") {
  const PolicyDomainMismatchError err(1, 2);
  CHECK(std::string(err.what()).find("1") != std::string::npos);
  CHECK(std::string(err.what()).find("2") != std::string::npos);
}
