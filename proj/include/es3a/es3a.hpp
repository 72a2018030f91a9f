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

#include "es3a/agent.hpp"
#include "es3a/auth.hpp"
#include "es3a/baselines.hpp"
#include "es3a/config.hpp"
#include "es3a/events.hpp"
#include "es3a/kernel.hpp"
#include "es3a/metrics.hpp"
#include "es3a/nf_pool.hpp"
#include "es3a/packet_filter.hpp"
#include "es3a/policy.hpp"
#include "es3a/rng.hpp"
#include "es3a/simulation.hpp"
#include "es3a/sweep.hpp"
#include "es3a/threats.hpp"
#include "es3a/token.hpp"
#include "es3a/topology.hpp"
#include "es3a/trust.hpp"
