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

#include <cmath>

#include "es3a/packet_filter.hpp"
#include "es3a/rng.hpp"
#include "es3a/trust.hpp"

using namespace es3a;

namespace {

TrustRecord record(int ue, int domain, double alpha, double beta, double last_update) {
  return TrustRecord{ue, domain, alpha, beta, last_update};
}

TrustSection default_trust() { return TrustSection{}; }

}  // namespace

TEST_CASE("Beta-Bernoulli update arithmetic") {
  TrustRecord rec = record(0, 1, 1.0, 1.0, 0.0);
  SECTION("benign evidence") {
    update_trust(rec, Observation::Benign, 5.0, 2.0);
    CHECK(rec.alpha == 2.0);
    CHECK(rec.beta == 1.0);
    CHECK_THAT(rec.trust_value(), Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-12));
    CHECK(rec.last_update == 5.0);
  }
  SECTION("malicious evidence with the default penalty weight") {
    update_trust(rec, Observation::Malicious, 5.0, 2.0);
    CHECK(rec.alpha == 1.0);
    CHECK(rec.beta == 3.0);
    CHECK_THAT(rec.trust_value(), Catch::Matchers::WithinAbs(0.25, 1e-12));
  }
}

TEST_CASE("trust bounds and monotone damage properties") {
  RngStream rng("prop", 17);
  TrustRecord rec = record(0, 1, 1.0, 1.0, 0.0);
  for (int i = 0; i < 5000; ++i) {
    const double before = rec.trust_value();
    const bool malicious = rng.bernoulli(0.3);
    update_trust(rec, malicious ? Observation::Malicious : Observation::Benign,
                 static_cast<double>(i), 2.0);
    CHECK(rec.alpha > 0.0);
    CHECK(rec.beta > 0.0);
    const double after = rec.trust_value();
    CHECK(after > 0.0);
    CHECK(after < 1.0);
    if (malicious) {
      CHECK(after <= before);
    } else {
      CHECK(after >= before);
    }
  }
}

TEST_CASE("sustained attacker convergence: 200 malicious observations") {
  TrustRecord rec = record(0, 1, 1.0, 1.0, 0.0);
  for (int i = 0; i < 200; ++i) update_trust(rec, Observation::Malicious, i, 2.0);
  CHECK(rec.trust_value() < 0.05);
}

TEST_CASE("fusion identity, symmetry, and the staggered-recency oracle") {
  SECTION("single record is the identity") {
    FusedTrust f = fuse_trust({record(3, 1, 7.0, 3.0, 100.0)}, 100.0, 0.001);
    CHECK_THAT(f.t_ue, Catch::Matchers::WithinAbs(0.7, 1e-12));
  }
  SECTION("two equally fresh records average symmetrically") {
    FusedTrust f = fuse_trust({record(3, 1, 4.0, 6.0, 100.0), record(3, 2, 8.0, 2.0, 100.0)},
                              100.0, 0.001);
    CHECK_THAT(f.t_ue, Catch::Matchers::WithinAbs(0.6, 1e-12));
  }
  SECTION("three staggered records match an independent recomputation") {
    const double now = 5000.0;
    const double lambda = 0.001;
    std::vector<TrustRecord> records = {record(3, 1, 9.0, 1.0, 4900.0),
                                        record(3, 2, 2.0, 8.0, 3000.0),
                                        record(3, 3, 5.0, 5.0, 500.0)};
    FusedTrust f = fuse_trust(records, now, lambda);

    // Brute-force: recompute the normalized exponential weights by hand.
    double wsum = 0.0, acc = 0.0;
    for (const auto& r : records) {
      const double w = std::exp(-lambda * (now - r.last_update));
      wsum += w;
      acc += w * (r.alpha / (r.alpha + r.beta));
    }
    CHECK_THAT(f.t_ue, Catch::Matchers::WithinAbs(acc / wsum, 1e-12));

    double reported_weight_sum = 0.0;
    for (const auto& [dom, w] : f.contributing_domains) {
      CHECK(w > 0.0);
      reported_weight_sum += w;
    }
    CHECK_THAT(reported_weight_sum, Catch::Matchers::WithinAbs(1.0, 1e-12));
  }
  SECTION("fusion sandwich: fused value lies between per-domain extremes") {
    RngStream rng("sandwich", 23);
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<TrustRecord> records;
      double lo = 1.0, hi = 0.0;
      const int n = 1 + static_cast<int>(rng.uniform_index(4));
      for (int d = 0; d < n; ++d) {
        TrustRecord r = record(1, d, rng.uniform(0.5, 20.0), rng.uniform(0.5, 20.0),
                               rng.uniform(0.0, 1000.0));
        lo = std::min(lo, r.trust_value());
        hi = std::max(hi, r.trust_value());
        records.push_back(r);
      }
      const FusedTrust f = fuse_trust(records, 1000.0, 0.001);
      CHECK(f.t_ue >= lo - 1e-12);
      CHECK(f.t_ue <= hi + 1e-12);
      CHECK(f.t_ue > 0.0);
      CHECK(f.t_ue < 1.0);
    }
  }
  SECTION("errors") {
    CHECK_THROWS_AS(fuse_trust({}, 0.0, 0.001), EmptyRecordSetError);
    CHECK_THROWS_AS(fuse_trust({record(1, 1, 1, 1, 0), record(2, 2, 1, 1, 0)}, 0.0, 0.001),
                    MixedUeError);
  }
}

TEST_CASE("threshold admission with boundary equality") {
  CHECK(access_decision(0, 0.5, 0.5).allowed);
  CHECK_FALSE(access_decision(0, 0.49, 0.5).allowed);
  SECTION("monotone in trust for a fixed threshold") {
    RngStream rng("mono", 5);
    for (int i = 0; i < 1000; ++i) {
      const double th = rng.uniform(0.05, 0.95);
      double t1 = rng.uniform(0.0, 1.0);
      double t2 = rng.uniform(0.0, 1.0);
      if (t1 > t2) std::swap(t1, t2);
      if (access_decision(0, t1, th).allowed) CHECK(access_decision(0, t2, th).allowed);
    }
  }
}

TEST_CASE("compliant traffic passes the filter untouched") {
  TrustSystem trust(default_trust(), ArchitectureMode::Es3a);
  trust.ensure_record(0, 1, 0.0);
  trust.ensure_record(1, 1, 0.0);
  std::vector<Packet> batch;
  for (int i = 0; i < 3; ++i) batch.push_back({0, false});
  for (int i = 0; i < 2; ++i) batch.push_back({1, false});
  const FilterResult res = filter_packets(trust, 1, batch, 100.0, 100.0, 50.0, 0.4);
  CHECK(res.passed.size() == 5);
  CHECK(res.dropped.empty());
  CHECK_FALSE(res.violated.at(0));
  CHECK_FALSE(res.violated.at(1));
}

TEST_CASE("a flooding source is excluded within a bounded number of batches") {
  // Hand-iterated oracle: each packet of a violating batch adds w_mal to
  // beta, so the fused value after batch k is alpha / (alpha + w_mal*k*n).
  TrustSection params = default_trust();
  TrustSystem trust(params, ArchitectureMode::Es3a);
  trust.ensure_record(7, 1, 0.0);

  const std::uint32_t flood = 500;  // 100x the 5-packet cap for a 100 ms window
  double expected_alpha = params.prior_alpha;
  double expected_beta = params.prior_beta;
  int batches_until_drop = -1;
  for (int k = 0; k < 5; ++k) {
    std::vector<Packet> batch(flood, Packet{7, true});
    const double now = 100.0 * (k + 1);
    const FilterResult res = filter_packets(trust, 1, batch, now, 100.0, 50.0, params.t_th);
    CHECK(res.violated.at(7));

    // Filter decisions must agree with access_decision at drop time.
    const bool allowed = res.decisions.at(7).allowed;
    CHECK(allowed == access_decision(7, res.decisions.at(7).t_ue, params.t_th).allowed);
    CHECK((allowed ? res.passed.size() : res.dropped.size()) == flood);

    if (!allowed && batches_until_drop < 0) batches_until_drop = k;
    // Oracle: the decision used the pre-batch evidence.
    const double oracle_t = expected_alpha / (expected_alpha + expected_beta);
    CHECK_THAT(res.decisions.at(7).t_ue, Catch::Matchers::WithinAbs(oracle_t, 1e-9));
    expected_beta += params.w_mal * flood;
  }
  REQUIRE(batches_until_drop >= 0);
  CHECK(batches_until_drop <= 2);
  const TrustRecord* rec = trust.find_record(7, 1);
  REQUIRE(rec != nullptr);
  CHECK_THAT(rec->beta, Catch::Matchers::WithinAbs(params.prior_beta + 2.0 * 500 * 5, 1e-9));
}

TEST_CASE("filter decisions are blind to the ground-truth flag") {
  auto run_filter = [](bool malicious_flag) {
    TrustSystem trust(default_trust(), ArchitectureMode::Es3a);
    trust.ensure_record(0, 1, 0.0);
    trust.ensure_record(1, 1, 0.0);
    std::vector<std::pair<std::size_t, std::size_t>> outcomes;
    for (int k = 1; k <= 10; ++k) {
      std::vector<Packet> batch(k % 2 == 0 ? 80 : 2, Packet{k % 2, malicious_flag});
      const FilterResult res = filter_packets(trust, 1, batch, 100.0 * k, 100.0, 50.0, 0.4);
      outcomes.emplace_back(res.passed.size(), res.dropped.size());
    }
    return outcomes;
  };
  CHECK(run_filter(false) == run_filter(true));
}

TEST_CASE("centralized enforcement reads a lagged snapshot") {
  TrustSection params = default_trust();
  params.centralized_sync_ms = 1000.0;
  TrustSystem trust(params, ArchitectureMode::Centralized);
  trust.ensure_record(0, 1, 0.0);
  // Collapse the stored trust right away.
  for (int i = 0; i < 300; ++i) trust.observe(0, 1, Observation::Malicious, 10.0);
  // Enforcement still sees the prior until the next sync epoch.
  CHECK(trust.enforcement_trust(0, 500.0) >= 0.4);
  CHECK(trust.enforcement_trust(0, 1500.0) < 0.05);
}

TEST_CASE("es3a collaboration refreshes stale copies on malicious evidence") {
  TrustSystem trust(default_trust(), ArchitectureMode::Es3a);
  trust.ensure_record(0, 1, 0.0);
  // A stale good copy in domain 2, as a domain switch would leave behind.
  for (int i = 0; i < 50; ++i) trust.observe(0, 1, Observation::Benign, 1.0);
  const TrustRecord* d1 = trust.find_record(0, 1);
  trust.seed_from_snapshot(0, 2, d1->alpha, d1->beta, 1.0);

  for (int i = 0; i < 200; ++i) trust.observe(0, 1, Observation::Malicious, 2000.0);
  const TrustRecord* d2 = trust.find_record(0, 2);
  REQUIRE(d2 != nullptr);
  // The copy tracks the fresh evidence exactly, so fusion cannot be diluted
  // by the stale snapshot.
  CHECK(d2->trust_value() == trust.find_record(0, 1)->trust_value());
  CHECK(trust.enforcement_trust(0, 2000.0) < 0.4);
}

TEST_CASE("trust store CSV dump has the documented schema") {
  TrustSystem trust(default_trust(), ArchitectureMode::Es3a);
  trust.ensure_record(3, 1, 42.0);
  const std::string csv = trust.dump_csv();
  CHECK(csv.find("ue_id,domain_id,alpha,beta,t_d,last_update") == 0);
  CHECK(csv.find("3,1,1,1,0.5,42") != std::string::npos);
}
