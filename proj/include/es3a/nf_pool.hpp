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

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace es3a {

/// Result of submitting a job to the pool.
struct NfAdmission {
  bool timed_out = false;
  double start = 0.0;  // admission time (valid when !timed_out)
  double wait = 0.0;   // queueing delay, or the timeout bound when timed_out
};

/// Finite pool of network-function slots with FIFO queueing and a waiting
/// timeout.
///
/// Modeled as `capacity` identical servers with a min-heap of free times.
/// Because jobs never preempt and durations are fixed at submission, each
/// job's admission time is exact at submit time: it takes the earliest free
/// server or times out if the wait would exceed the bound. A job that would
/// time out never occupies a server, matching a queue with reneging.
class NfPool {
 public:
  NfPool() = default;

  NfPool(int capacity, double timeout_ms) : timeout_ms_(timeout_ms) {
    for (int i = 0; i < capacity; ++i) free_times_.insert(0.0);
  }

  int capacity() const { return static_cast<int>(free_times_.size()); }

  NfAdmission submit(double now, double duration_ms) {
    ++submitted_;
    auto it = free_times_.begin();
    const double start = std::max(now, *it);
    const double wait = start - now;
    if (wait > timeout_ms_) {
      ++timeouts_;
      return NfAdmission{true, 0.0, timeout_ms_};
    }
    free_times_.erase(it);
    free_times_.insert(start + duration_ms);
    active_.push_back({start, start + duration_ms});
    ++admitted_;
    return NfAdmission{false, start, wait};
  }

  /// Concurrent jobs executing at time t.
  int in_use(double t) const {
    int n = 0;
    for (const auto& iv : active_)
      if (iv.start <= t && t < iv.end) ++n;
    return n;
  }

  double utilization(double t) const {
    return capacity() == 0 ? 0.0 : static_cast<double>(in_use(t)) / capacity();
  }

  /// Jobs started no later than t minus jobs finished by t; equals in_use(t)
  /// at interval-boundary-free instants (resource conservation).
  int started_minus_finished(double t) const {
    int n = 0;
    for (const auto& iv : active_) {
      if (iv.start <= t) ++n;
      if (iv.end <= t) --n;
    }
    return n;
  }

  void prune(double now) {
    std::erase_if(active_, [now](const Interval& iv) { return iv.end <= now; });
  }

  std::uint64_t submitted() const { return submitted_; }
  std::uint64_t admitted() const { return admitted_; }
  std::uint64_t timeouts() const { return timeouts_; }

 private:
  struct Interval {
    double start;
    double end;
  };

  double timeout_ms_ = 500.0;
  std::multiset<double> free_times_;
  std::vector<Interval> active_;
  std::uint64_t submitted_ = 0;
  std::uint64_t admitted_ = 0;
  std::uint64_t timeouts_ = 0;
};

}  // namespace es3a
