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

#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "es3a/events.hpp"
#include "es3a/rng.hpp"

namespace es3a {

class PastEventError : public std::logic_error {
 public:
  explicit PastEventError(TimeMs event_time, TimeMs clock)
      : std::logic_error("event scheduled in the past: t=" + std::to_string(event_time) +
                         " clock=" + std::to_string(clock)) {}
};

using EventTrace = std::vector<SimEvent>;

/// Deterministic single-threaded discrete-event engine.
///
/// Events are dequeued in nondecreasing time; equal times break ties by
/// insertion sequence. A handler (set by the simulation) mutates world state
/// and may annotate the event payload it receives; the post-processing event
/// is what enters the trace, so the trace doubles as the replay artifact.
class SimKernel {
 public:
  using Handler = std::function<void(SimEvent&)>;
  using Sink = std::function<void(const SimEvent&)>;

  explicit SimKernel(std::uint64_t master_seed) : streams_(master_seed) {}

  TimeMs now() const { return clock_; }
  StreamSet& streams() { return streams_; }
  RngStream& stream(const std::string& name) { return streams_.stream(name); }

  void set_handler(Handler h) { handler_ = std::move(h); }

  /// When set, processed events are streamed to the sink instead of being
  /// accumulated in memory; run_until then returns an empty trace.
  void set_sink(Sink s) { sink_ = std::move(s); }

  std::uint64_t scheduled_count() const { return scheduled_; }
  std::uint64_t processed_count() const { return processed_; }
  std::size_t queued_count() const { return queue_.size(); }

  void schedule(TimeMs time, EventKind kind, EventPayload payload) {
    if (time < clock_) throw PastEventError(time, clock_);
    SimEvent ev;
    ev.time = time;
    ev.seq = next_seq_++;
    ev.kind = kind;
    ev.payload = std::move(payload);
    queue_.push(std::move(ev));
    ++scheduled_;
  }

  /// Processes all events with time <= t_end in deterministic order, then
  /// advances the clock to t_end. Returns the ordered trace of processed
  /// events (empty when a sink is installed).
  EventTrace run_until(TimeMs t_end) {
    if (t_end < clock_) throw PastEventError(t_end, clock_);
    EventTrace trace;
    while (!queue_.empty() && queue_.top().time <= t_end) {
      SimEvent ev = queue_.top();
      queue_.pop();
      clock_ = ev.time;
      if (handler_) handler_(ev);
      ++processed_;
      if (sink_) {
        sink_(ev);
      } else {
        trace.push_back(std::move(ev));
      }
    }
    clock_ = t_end;
    return trace;
  }

 private:
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  TimeMs clock_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t scheduled_ = 0;
  std::uint64_t processed_ = 0;
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> queue_;
  Handler handler_;
  Sink sink_;
  StreamSet streams_;
};

}  // namespace es3a
