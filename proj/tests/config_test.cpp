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

#include <algorithm>
#include <fstream>

#include "es3a/config.hpp"

using namespace es3a;

namespace {
const std::string kCaseStudy = std::string(ES3A_SOURCE_DIR) + "/scenarios/iot_case_study.json";

Json load_case_study() {
  std::ifstream in(kCaseStudy);
  REQUIRE(in.good());
  Json doc;
  in >> doc;
  return doc;
}
}  // namespace

TEST_CASE("bundled case study parses to the reported population") {
  ScenarioConfig cfg = parse_scenario(kCaseStudy);
  CHECK(cfg.total_ues() == 50);
  int sensors = 0, industrial = 0;
  for (const auto& g : cfg.topology.ue_groups)
    (g.ue_class == UeClass::Sensor ? sensors : industrial) += g.count;
  CHECK(sensors == 40);
  CHECK(industrial == 10);
  CHECK(cfg.topology.base_stations.size() == 3);
  CHECK(cfg.topology.domains.size() == 2);
  // Attack profiles are present but their windows are disabled.
  REQUIRE(cfg.threat.profiles.size() == 3);
  for (const auto& p : cfg.threat.profiles) CHECK_FALSE(p.enabled());
}

TEST_CASE("out-of-range SIR probability is reported with its field path") {
  Json doc = load_case_study();
  doc["threat"]["sir"]["p_inf"] = 1.5;
  try {
    parse_scenario_json(doc);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    REQUIRE(e.violations().size() == 1);
    CHECK(e.violations()[0].find("threat.sir.p_inf") != std::string::npos);
  }
}

TEST_CASE("validation reports every violation, not just the first") {
  Json doc = load_case_study();
  doc["threat"]["sir"]["p_inf"] = 1.5;
  doc["run"]["duration_ms"] = 0.0;
  doc["trust"]["w_mal"] = -1.0;
  try {
    parse_scenario_json(doc);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.violations().size() == 3);
  }
}

TEST_CASE("zero duration is rejected") {
  Json doc = load_case_study();
  doc["run"]["duration_ms"] = 0.0;
  CHECK_THROWS_AS(parse_scenario_json(doc), ValidationError);
}

TEST_CASE("base station referencing an unknown domain is rejected") {
  Json doc = load_case_study();
  doc["topology"]["base_stations"][0]["domain"] = 99;
  CHECK_THROWS_AS(parse_scenario_json(doc), ValidationError);
}

TEST_CASE("key reordering leaves the scenario hash unchanged") {
  Json doc = load_case_study();
  ScenarioConfig a = parse_scenario_json(doc);

  // Rebuild the document with keys inserted in reverse order; nlohmann
  // canonicalizes object key order, so the digest must match.
  Json reordered = Json::object();
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  std::reverse(keys.begin(), keys.end());
  for (const auto& k : keys) reordered[k] = doc[k];
  ScenarioConfig b = parse_scenario_json(reordered);

  CHECK(scenario_hash(a) == scenario_hash(b));
}

TEST_CASE("any field change changes the scenario hash") {
  Json doc = load_case_study();
  ScenarioConfig a = parse_scenario_json(doc);
  doc["trust"]["t_th"] = 0.41;
  ScenarioConfig b = parse_scenario_json(doc);
  CHECK(scenario_hash(a) != scenario_hash(b));
}

TEST_CASE("missing file raises IoError") {
  CHECK_THROWS_AS(parse_scenario("/nonexistent/scenario.json"), IoError);
}

TEST_CASE("zero-UE scenario is a valid degenerate config") {
  Json doc = load_case_study();
  doc["topology"]["ue_groups"] = Json::array();
  doc["threat"]["sir"]["initial_infected"] = Json::array();
  ScenarioConfig cfg = parse_scenario_json(doc);
  CHECK(cfg.total_ues() == 0);
}

TEST_CASE("poisoning intensity above one is rejected") {
  Json doc = load_case_study();
  doc["threat"]["profiles"][1]["intensity"] = 1.2;
  CHECK_THROWS_AS(parse_scenario_json(doc), ValidationError);
}

TEST_CASE("mode capability flags follow the architecture comparison") {
  const CapabilityFlags es = capabilities_for(ArchitectureMode::Es3a);
  CHECK(es.closed_loop);
  CHECK(es.customized_security);
  CHECK(es.interdomain_collab);
  const CapabilityFlags dtm = capabilities_for(ArchitectureMode::Dtm);
  CHECK(dtm.closed_loop);
  CHECK(dtm.customized_security);
  CHECK_FALSE(dtm.interdomain_collab);
  const CapabilityFlags cent = capabilities_for(ArchitectureMode::Centralized);
  CHECK_FALSE(cent.closed_loop);
  CHECK_FALSE(cent.customized_security);
  CHECK_FALSE(cent.interdomain_collab);
}
