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
#include <fstream>

#include "es3a/topology.hpp"

using namespace es3a;

namespace {

ScenarioConfig case_study() {
  return parse_scenario(std::string(ES3A_SOURCE_DIR) + "/scenarios/iot_case_study.json");
}

Topology build_case_study(std::uint64_t seed = 1) {
  static thread_local std::unique_ptr<RngStream> rng;
  rng = std::make_unique<RngStream>("channel", derive_stream_seed(seed, "channel"));
  ScenarioConfig cfg = case_study();
  return build_topology(cfg, *rng);
}

}  // namespace

TEST_CASE("case-study topology matches the reported layout") {
  Topology topo = build_case_study();
  REQUIRE(topo.ues.size() == 50);
  int sensors = 0;
  for (const auto& u : topo.ues) sensors += u.ue_class == UeClass::Sensor;
  CHECK(sensors == 40);
  CHECK(topo.ues.size() - sensors == 10);

  // BS1 and BS2 belong to the first RAN domain, BS3 to the second.
  CHECK(topo.bs_by_id(1).domain_id == 1);
  CHECK(topo.bs_by_id(2).domain_id == 1);
  CHECK(topo.bs_by_id(3).domain_id == 2);
  const auto& d1 = topo.domain_by_id(1);
  CHECK(d1.bs_members == std::vector<int>{1, 2});
  CHECK(topo.domain_by_id(2).bs_members == std::vector<int>{3});

  // Every bs_member's domain points back at the domain holding it.
  for (const auto& d : topo.domains)
    for (int bs : d.bs_members) CHECK(topo.bs_by_id(bs).domain_id == d.id);

  // Attached base stations exist, and q/f stay in [0,1].
  for (const auto& u : topo.ues) {
    CHECK_NOTHROW(topo.bs_by_id(u.attached_bs));
    CHECK(u.rf_fingerprint_quality >= 0.0);
    CHECK(u.rf_fingerprint_quality <= 1.0);
  }
}

TEST_CASE("zero-UE topology is valid") {
  ScenarioConfig cfg = case_study();
  cfg.topology.ue_groups.clear();
  RngStream rng("channel", 7);
  Topology topo = build_topology(cfg, rng);
  CHECK(topo.ues.empty());
  CHECK(topo.base_stations.size() == 3);
}

TEST_CASE("dangling base-station reference raises ConfigError") {
  ScenarioConfig cfg = case_study();
  cfg.topology.base_stations[0].domain = 42;
  RngStream rng("channel", 7);
  CHECK_THROWS_AS(build_topology(cfg, rng), ConfigError);
}

TEST_CASE("nearest base station by distance with lowest-id ties") {
  Topology topo;
  topo.domains.push_back({1, DomainKind::Ran, {}, 4, {}});
  UeNode ue;
  ue.x = 0.0;
  ue.y = 0.0;

  SECTION("closer station wins") {
    topo.base_stations.push_back({1, 1, 1.0, 0.0, 0});
    topo.base_stations.push_back({2, 1, 5.0, 0.0, 0});
    CHECK(nearest_bs(ue, topo).id == 1);
  }
  SECTION("equidistant stations resolve to the lowest id") {
    topo.base_stations.push_back({7, 1, 3.0, 0.0, 0});
    topo.base_stations.push_back({2, 1, -3.0, 0.0, 0});
    CHECK(nearest_bs(ue, topo).id == 2);
  }
  SECTION("no stations raises EmptyTopologyError") {
    CHECK_THROWS_AS(nearest_bs(ue, topo), EmptyTopologyError);
  }
}

TEST_CASE("case-study attachment equals a brute-force nearest scan") {
  Topology topo = build_case_study();
  for (const auto& u : topo.ues) {
    int best_id = -1;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : topo.base_stations) {
      const double d = std::hypot(u.x - b.x, u.y - b.y);
      if (d < best || (d == best && b.id < best_id)) {
        best = d;
        best_id = b.id;
      }
    }
    CHECK(u.attached_bs == best_id);
  }
}

TEST_CASE("channel sampling is clamped and mean-reverting") {
  ScenarioConfig cfg = case_study();
  RngStream setup("channel", 3);
  Topology topo = build_topology(cfg, setup);

  SECTION("zero jitter returns the base quality every draw") {
    cfg.services.channel_jitter = 0.0;
    ChannelModel model(cfg, topo, setup);
    model.set_base_quality(0, 1, 0.8);
    RngStream rng("draw", 11);
    for (int i = 0; i < 100; ++i) CHECK(model.sample(0, 1, rng) == 0.8);
  }

  SECTION("draws stay in [0,1] even with extreme jitter") {
    cfg.services.channel_jitter = 3.0;
    ChannelModel model(cfg, topo, setup);
    RngStream rng("draw", 12);
    for (int i = 0; i < 1000; ++i) {
      const double q = model.sample(0, 1, rng);
      CHECK(q >= 0.0);
      CHECK(q <= 1.0);
    }
  }

  SECTION("empirical mean of 1e4 draws tracks the base") {
    ChannelModel model(cfg, topo, setup);
    model.set_base_quality(0, 1, 0.7);
    RngStream rng("draw", 13);
    double sum = 0.0;
    for (int i = 0; i < 10000; ++i) sum += model.sample(0, 1, rng);
    CHECK_THAT(sum / 10000.0, Catch::Matchers::WithinAbs(0.7, 0.02));
  }
}

TEST_CASE("topology dump carries ues, base stations, and domains") {
  Topology topo = build_case_study();
  Json dump = topo.dump();
  CHECK(dump.at("ues").size() == 50);
  CHECK(dump.at("base_stations").size() == 3);
  CHECK(dump.at("domains").size() == 2);
}
