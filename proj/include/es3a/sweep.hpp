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

#include <future>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "es3a/simulation.hpp"

namespace es3a {

struct SweepCell {
  ArchitectureMode mode = ArchitectureMode::Es3a;
  double scale = 1.0;
  std::uint64_t seed = 0;
  std::string trace_path;  // optional per-cell trace output
};

/// Cartesian-product experiment runner. Cells are declared in (mode, scale,
/// seed) order and results keep that order regardless of completion order.
/// Cells are fully isolated simulations, so they may run in parallel; a
/// failing cell reports its diagnostic without aborting siblings.
inline std::vector<SweepCell> sweep_cells(const std::vector<ArchitectureMode>& modes,
                                          const std::vector<double>& scales,
                                          const std::vector<std::uint64_t>& seeds) {
  std::vector<SweepCell> cells;
  for (ArchitectureMode mode : modes)
    for (double scale : scales)
      for (std::uint64_t seed : seeds) cells.push_back({mode, scale, seed, ""});
  return cells;
}

inline std::vector<RunResult> run_sweep(const ScenarioConfig& cfg, const std::vector<SweepCell>& cells,
                                        unsigned max_parallel = 0) {
  if (max_parallel == 0) {
    max_parallel = std::max(1u, std::thread::hardware_concurrency());
  }
  std::vector<RunResult> results(cells.size());
  std::size_t next = 0;
  while (next < cells.size()) {
    const std::size_t batch = std::min<std::size_t>(max_parallel, cells.size() - next);
    std::vector<std::future<RunResult>> futures;
    futures.reserve(batch);
    for (std::size_t i = 0; i < batch; ++i) {
      const SweepCell& cell = cells[next + i];
      futures.push_back(std::async(std::launch::async, [&cfg, cell]() {
        RunOptions opts;
        opts.seed = cell.seed;
        opts.mode = cell.mode;
        opts.scale = cell.scale;
        opts.trace_path = cell.trace_path;
        try {
          return run_scenario(cfg, opts);
        } catch (const std::exception& e) {
          RunResult failed;
          failed.seed = cell.seed;
          failed.mode = cell.mode;
          failed.scale = cell.scale;
          failed.ok = false;
          failed.error = e.what();
          return failed;
        }
      }));
    }
    for (std::size_t i = 0; i < batch; ++i) results[next + i] = futures[i].get();
    next += batch;
  }
  return results;
}

/// One row per cell: mode, scale, seed, headline latency and security
/// metrics. Failed cells carry the diagnostic in an `error` column.
inline std::string sweep_summary_csv(const std::vector<RunResult>& results) {
  std::ostringstream os;
  os << "mode,scale,seed,mean_latency_ms,p95_latency_ms,filtering_rate,timeouts,error\n";
  for (const auto& r : results) {
    os << to_string(r.mode) << ',' << r.scale << ',' << r.seed << ',';
    if (r.ok) {
      os << r.metrics.mean_latency_ms << ',' << r.metrics.p95_latency_ms << ','
         << r.metrics.filtering_rate << ',' << r.metrics.timeouts << ',';
    } else {
      os << ",,,,";
    }
    std::string err = r.error;
    for (auto& c : err)
      if (c == ',' || c == '\n') c = ';';
    os << err << '\n';
  }
  return os.str();
}

}  // namespace es3a
