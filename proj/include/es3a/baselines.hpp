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

#include "es3a/policy.hpp"
#include "es3a/topology.hpp"

namespace es3a {

/// The centralized comparison architecture: nearest-neighbor access with a
/// fixed rule (Sensor -> PLS, Industrial -> AKA), immediate execution, the
/// static global trust threshold, and no learning. Stateless: identical
/// inputs yield identical policies at any time.
inline SecurityPolicy centralized_policy(const UeNode& ue, const Topology& topo, double t_th) {
  const BaseStation& bs = nearest_bs(ue, topo);
  SecurityPolicy p;
  p.ue_id = ue.id;
  p.method = ue.ue_class == UeClass::Sensor ? AuthMethod::Pls : AuthMethod::Aka;
  p.domain_id = bs.domain_id;
  p.slot_offset_ms = 0.0;
  p.t_th = t_th;
  return p;
}

}  // namespace es3a
