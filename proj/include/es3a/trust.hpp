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

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "es3a/config.hpp"

namespace es3a {

enum class Observation : std::uint8_t { Benign, Malicious };

/// Beta-Bernoulli evidence for one (UE, domain) pair. The per-domain trust
/// value is the posterior mean alpha / (alpha + beta).
struct TrustRecord {
  int ue_id = 0;
  int domain_id = 0;
  double alpha = 1.0;
  double beta = 1.0;
  double last_update = 0.0;

  double trust_value() const { return alpha / (alpha + beta); }
};

struct FusedTrust {
  int ue_id = 0;
  double t_ue = 0.5;
  std::vector<std::pair<int, double>> contributing_domains;  // (domain_id, weight)
};

struct AccessDecision {
  int ue_id = 0;
  bool allowed = false;
  double t_ue = 0.0;
  double t_th = 0.0;
};

class EmptyRecordSetError : public std::logic_error {
 public:
  EmptyRecordSetError() : std::logic_error("trust fusion requires at least one record") {}
};

class MixedUeError : public std::logic_error {
 public:
  MixedUeError() : std::logic_error("trust fusion records must refer to one UE") {}
};

/// Benign evidence adds 1 to alpha; malicious evidence adds w_mal to beta, so
/// trust falls faster than it recovers.
inline void update_trust(TrustRecord& rec, Observation obs, double now, double w_mal) {
  if (obs == Observation::Benign) {
    rec.alpha += 1.0;
  } else {
    rec.beta += w_mal;
  }
  rec.last_update = now;
}

/// Recency-weighted fusion of per-domain trust into T_UE:
/// w_D proportional to exp(-lambda * (now - last_update)), normalized.
inline FusedTrust fuse_trust(const std::vector<TrustRecord>& records, double now,
                             double lambda_per_ms) {
  if (records.empty()) throw EmptyRecordSetError();
  const int ue = records.front().ue_id;
  FusedTrust fused;
  fused.ue_id = ue;
  double weight_sum = 0.0;
  double acc = 0.0;
  for (const auto& rec : records) {
    if (rec.ue_id != ue) throw MixedUeError();
    const double age = std::max(0.0, now - rec.last_update);
    const double w = std::exp(-lambda_per_ms * age);
    weight_sum += w;
    acc += w * rec.trust_value();
    fused.contributing_domains.emplace_back(rec.domain_id, w);
  }
  for (auto& [dom, w] : fused.contributing_domains) w /= weight_sum;
  fused.t_ue = acc / weight_sum;
  return fused;
}

/// Threshold admission: boundary equality admits.
inline AccessDecision access_decision(int ue_id, double t_ue, double t_th) {
  return AccessDecision{ue_id, t_ue >= t_th, t_ue, t_th};
}

/// Per-domain trust stores plus the mode-dependent enforcement view.
///
/// es3a / dtm: evidence is kept per domain and every access or filtering
/// decision fuses all records for the UE (distributed trust with token
/// sharing). centralized: one global record per UE and enforcement reads a
/// snapshot refreshed every centralized_sync_ms, so observations reach
/// enforcement only at the sync cadence (no real-time closed loop).
class TrustSystem {
 public:
  static constexpr int kGlobalStore = -1;

  TrustSystem() = default;

  TrustSystem(const TrustSection& params, ArchitectureMode mode)
      : params_(params), mode_(mode) {}

  const TrustSection& params() const { return params_; }

  bool has_record(int ue_id, int domain_id) const {
    return stores_.count({store_key(domain_id), ue_id}) > 0;
  }

  TrustRecord& ensure_record(int ue_id, int domain_id, double now) {
    const int key = store_key(domain_id);
    auto it = stores_.find({key, ue_id});
    if (it == stores_.end()) {
      TrustRecord rec;
      rec.ue_id = ue_id;
      rec.domain_id = key;
      rec.alpha = params_.prior_alpha;
      rec.beta = params_.prior_beta;
      rec.last_update = now;
      it = stores_.emplace(std::make_pair(key, ue_id), rec).first;
    }
    return it->second;
  }

  const TrustRecord* find_record(int ue_id, int domain_id) const {
    auto it = stores_.find({store_key(domain_id), ue_id});
    return it == stores_.end() ? nullptr : &it->second;
  }

  /// Installs a record transferred from another domain via a trust context
  /// token; local evidence is kept when fresher.
  void seed_from_snapshot(int ue_id, int domain_id, double alpha, double beta, double snapshot_time) {
    TrustRecord& rec = ensure_record(ue_id, domain_id, snapshot_time);
    if (snapshot_time >= rec.last_update) {
      rec.alpha = alpha;
      rec.beta = beta;
      rec.last_update = snapshot_time;
    }
  }

  void observe(int ue_id, int domain_id, Observation obs, double now) {
    // The centralized snapshot is captured on epoch entry, before any of the
    // epoch's observations land, so enforcement lags the store by up to one
    // sync interval.
    if (mode_ == ArchitectureMode::Centralized) refresh_snapshot_epoch(now);
    TrustRecord& rec = ensure_record(ue_id, domain_id, now);
    update_trust(rec, obs, now, params_.w_mal);
    // Inter-domain collaboration: misbehavior evidence propagates immediately
    // to every domain already holding a record for this UE, so a stale good
    // copy elsewhere cannot dilute the fused enforcement value.
    if (obs == Observation::Malicious && capabilities_for(mode_).interdomain_collab) {
      for (auto& [key, other] : stores_) {
        if (key.second != ue_id || key.first == store_key(domain_id)) continue;
        if (rec.last_update >= other.last_update) {
          other.alpha = rec.alpha;
          other.beta = rec.beta;
          other.last_update = rec.last_update;
        }
      }
    }
  }

  /// Trust value used for admission and packet filtering.
  double enforcement_trust(int ue_id, double now) {
    if (mode_ == ArchitectureMode::Centralized) {
      refresh_snapshot_epoch(now);
      auto it = snapshot_.find(ue_id);
      if (it != snapshot_.end()) return it->second;
      return params_.prior_alpha / (params_.prior_alpha + params_.prior_beta);
    }
    std::vector<TrustRecord> records = records_for(ue_id);
    if (records.empty()) return params_.prior_alpha / (params_.prior_alpha + params_.prior_beta);
    return fuse_trust(records, now, params_.fusion_lambda_per_ms).t_ue;
  }

  AccessDecision check_access(int ue_id, double now, double t_th) {
    return access_decision(ue_id, enforcement_trust(ue_id, now), t_th);
  }

  std::vector<TrustRecord> records_for(int ue_id) const {
    std::vector<TrustRecord> out;
    for (const auto& [key, rec] : stores_)
      if (key.second == ue_id) out.push_back(rec);
    return out;
  }

  /// CSV dump (ue_id, domain_id, alpha, beta, t_d, last_update) for offline
  /// analysis.
  std::string dump_csv() const {
    std::ostringstream os;
    os << "ue_id,domain_id,alpha,beta,t_d,last_update\n";
    for (const auto& [key, rec] : stores_) {
      os << rec.ue_id << ',' << rec.domain_id << ',' << rec.alpha << ',' << rec.beta << ','
         << rec.trust_value() << ',' << rec.last_update << '\n';
    }
    return os.str();
  }

 private:
  int store_key(int domain_id) const {
    return mode_ == ArchitectureMode::Centralized ? kGlobalStore : domain_id;
  }

  void refresh_snapshot_epoch(double now) {
    const long long epoch = static_cast<long long>(now / params_.centralized_sync_ms);
    if (epoch == snapshot_epoch_) return;
    snapshot_epoch_ = epoch;
    snapshot_.clear();
    for (const auto& [key, rec] : stores_) snapshot_[rec.ue_id] = rec.trust_value();
  }

  TrustSection params_;
  ArchitectureMode mode_ = ArchitectureMode::Es3a;
  std::map<std::pair<int, int>, TrustRecord> stores_;  // (domain store, ue) -> record
  std::map<int, double> snapshot_;                     // centralized enforcement view
  long long snapshot_epoch_ = -1;
};

}  // namespace es3a
