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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "es3a/es3a.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw es3a::IoError("cannot write " + path.string());
  out << contents;
}

void write_run_outputs(const es3a::RunResult& result, const es3a::ScenarioConfig& cfg,
                       const fs::path& dir) {
  fs::create_directories(dir);
  es3a::Json metrics = result.metrics.to_json();
  metrics["scenario_hash"] = result.scenario_hash;
  metrics["topology_digest"] = result.topology_digest;
  metrics["trace_digest"] = result.trace_digest;
  metrics["seed"] = result.seed;
  metrics["mode"] = es3a::to_string(result.mode);
  metrics["scale"] = result.scale;
  metrics["events_processed"] = result.events_processed;
  write_file(dir / "metrics.json", metrics.dump(2) + "\n");
  write_file(dir / "samples.csv", result.metrics.samples_csv());
  write_file(dir / "trust_store.csv", result.trust_csv);
  (void)cfg;
}

es3a::RunResult run_one(const es3a::ScenarioConfig& cfg, es3a::RunOptions opts,
                        const fs::path& out_dir) {
  fs::create_directories(out_dir);
  opts.trace_path = (out_dir / "trace.jsonl").string();
  es3a::RunResult result = es3a::run_scenario(cfg, opts);
  write_run_outputs(result, cfg, out_dir);
  return result;
}

std::string cell_dir_name(const es3a::RunResult& r) {
  std::ostringstream os;
  os << es3a::to_string(r.mode) << "_x" << r.scale << "_seed" << r.seed;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event simulator of two-stage security-service orchestration "
               "across RAN security domains"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string mode_str;
  std::vector<double> scales;
  std::vector<std::string> sweep_modes;
  std::vector<std::uint64_t> sweep_seeds;
  std::string trace_path;
  std::string load_agent_path;
  std::string save_agent_path;

  CLI::App* cmd_run = app.add_subcommand("run", "Run a single scenario");
  cmd_run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  CLI::Option* run_seed_opt = cmd_run->add_option("--seed", seed, "Master seed override");
  cmd_run->add_option("--mode", mode_str, "Architecture mode: es3a|centralized|dtm");
  cmd_run->add_option("--out", out_dir, "Output directory");
  cmd_run->add_option("--scale", scales, "Requests-per-UE scale factor");
  cmd_run->add_option("--load-agent", load_agent_path,
                      "Agent checkpoint to load (evaluation-only: epsilon forced to 0)");
  cmd_run->add_option("--save-agent", save_agent_path, "Write the trained agent checkpoint here");

  CLI::App* cmd_sweep = app.add_subcommand("sweep", "Run a (mode x scale x seed) sweep");
  cmd_sweep->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  cmd_sweep->add_option("--seed", sweep_seeds, "Seed (repeatable)");
  cmd_sweep->add_option("--mode", sweep_modes, "Mode (repeatable): es3a|centralized|dtm");
  cmd_sweep->add_option("--scale", scales, "Scale factor (repeatable)");
  cmd_sweep->add_option("--out", out_dir, "Output directory");

  CLI::App* cmd_validate = app.add_subcommand("validate", "Validate a scenario file");
  cmd_validate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();

  CLI::App* cmd_replay = app.add_subcommand("replay", "Re-derive metrics from a JSONL trace");
  cmd_replay->add_option("--trace", trace_path, "trace.jsonl produced by run")->required();
  cmd_replay->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_validate->parsed()) {
      try {
        es3a::ScenarioConfig cfg = es3a::parse_scenario(scenario_path);
        std::cout << "ok: scenario hash " << es3a::scenario_hash(cfg) << ", " << cfg.total_ues()
                  << " UEs, " << cfg.topology.base_stations.size() << " BSs, "
                  << cfg.topology.domains.size() << " domains\n";
        return kExitOk;
      } catch (const es3a::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
      }
    }

    if (cmd_run->parsed()) {
      es3a::ScenarioConfig cfg;
      try {
        cfg = es3a::parse_scenario(scenario_path);
      } catch (const es3a::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
      }
      es3a::RunOptions opts;
      seed_set = run_seed_opt->count() > 0;
      if (seed_set) opts.seed = seed;
      if (!mode_str.empty()) {
        auto m = es3a::mode_from_string(mode_str);
        if (!m) {
          std::cerr << "invalid --mode: " << mode_str << "\n";
          return kExitValidation;
        }
        opts.mode = *m;
      }
      if (!scales.empty()) opts.scale = scales.front();
      if (!load_agent_path.empty()) {
        std::ifstream in(load_agent_path);
        if (!in) throw es3a::IoError("cannot open agent checkpoint: " + load_agent_path);
        in >> opts.agent_checkpoint;
      }
      const es3a::RunResult result = run_one(cfg, opts, out_dir);
      if (!save_agent_path.empty())
        write_file(save_agent_path, result.agent_checkpoint.dump(2) + "\n");
      // Topology dump for debugging / fixtures.
      es3a::SimKernel probe_kernel(result.seed);
      es3a::Topology topo = es3a::build_topology(cfg, probe_kernel.stream("channel"));
      write_file(fs::path(out_dir) / "topology.json", topo.dump().dump(2) + "\n");
      std::cout << "run complete: mode " << es3a::to_string(result.mode) << " seed " << result.seed
                << " scale " << result.scale << "\n"
                << "  events " << result.events_processed << ", mean latency "
                << result.metrics.mean_latency_ms << " ms, p95 " << result.metrics.p95_latency_ms
                << " ms, timeouts " << result.metrics.timeouts << "\n"
                << "  trace digest " << result.trace_digest << "\n"
                << "  outputs in " << out_dir << "\n";
      return kExitOk;
    }

    if (cmd_sweep->parsed()) {
      es3a::ScenarioConfig cfg;
      try {
        cfg = es3a::parse_scenario(scenario_path);
      } catch (const es3a::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
      }
      std::vector<es3a::ArchitectureMode> modes;
      if (sweep_modes.empty()) {
        modes = {cfg.run.mode};
      } else {
        for (const auto& s : sweep_modes) {
          auto m = es3a::mode_from_string(s);
          if (!m) {
            std::cerr << "invalid --mode: " << s << "\n";
            return kExitValidation;
          }
          modes.push_back(*m);
        }
      }
      if (sweep_seeds.empty()) sweep_seeds = {cfg.run.master_seed};
      if (scales.empty()) scales = {cfg.run.scale};

      std::vector<es3a::SweepCell> cells = es3a::sweep_cells(modes, scales, sweep_seeds);
      fs::create_directories(out_dir);
      // Pre-assign per-cell output directories so traces stream to disk.
      for (auto& cell : cells) {
        es3a::RunResult naming;
        naming.mode = cell.mode;
        naming.scale = cell.scale;
        naming.seed = cell.seed;
        const fs::path dir = fs::path(out_dir) / cell_dir_name(naming);
        fs::create_directories(dir);
        cell.trace_path = (dir / "trace.jsonl").string();
      }
      const std::vector<es3a::RunResult> results = es3a::run_sweep(cfg, cells);
      for (const auto& r : results) {
        if (!r.ok) {
          std::cerr << "cell " << cell_dir_name(r) << " failed: " << r.error << "\n";
          continue;
        }
        write_run_outputs(r, cfg, fs::path(out_dir) / cell_dir_name(r));
      }
      write_file(fs::path(out_dir) / "sweep_summary.csv", es3a::sweep_summary_csv(results));
      std::cout << "sweep complete: " << results.size() << " cells, summary in " << out_dir
                << "/sweep_summary.csv\n";
      return kExitOk;
    }

    if (cmd_replay->parsed()) {
      std::ifstream in(trace_path);
      if (!in) throw es3a::IoError("cannot open trace: " + trace_path);
      es3a::MetricsReport report = es3a::collect_from_jsonl(in);
      fs::create_directories(out_dir);
      write_file(fs::path(out_dir) / "metrics.json", report.to_json().dump(2) + "\n");
      write_file(fs::path(out_dir) / "samples.csv", report.samples_csv());
      std::cout << "replay complete: " << report.auth_samples.size() << " auth samples, mean latency "
                << report.mean_latency_ms << " ms\n";
      return kExitOk;
    }
  } catch (const es3a::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
