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

#include <array>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "es3a/rng.hpp"
#include "es3a/trust.hpp"

namespace es3a {

/// SipHash-2-4 (Aumasson & Bernstein), 64-bit output. Used as the keyed tag
/// over serialized trust context tokens; this models the credit anchor with
/// a testable integrity property rather than a ledger.
inline std::uint64_t siphash24(const std::uint8_t key[16], const std::uint8_t* data,
                               std::size_t len) {
  auto rotl = [](std::uint64_t x, int b) { return (x << b) | (x >> (64 - b)); };
  auto read64 = [](const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
  };

  const std::uint64_t k0 = read64(key);
  const std::uint64_t k1 = read64(key + 8);
  std::uint64_t v0 = 0x736f6d6570736575ULL ^ k0;
  std::uint64_t v1 = 0x646f72616e646f6dULL ^ k1;
  std::uint64_t v2 = 0x6c7967656e657261ULL ^ k0;
  std::uint64_t v3 = 0x7465646279746573ULL ^ k1;

  auto sipround = [&] {
    v0 += v1;
    v1 = rotl(v1, 13);
    v1 ^= v0;
    v0 = rotl(v0, 32);
    v2 += v3;
    v3 = rotl(v3, 16);
    v3 ^= v2;
    v0 += v3;
    v3 = rotl(v3, 21);
    v3 ^= v0;
    v2 += v1;
    v1 = rotl(v1, 17);
    v1 ^= v2;
    v2 = rotl(v2, 32);
  };

  const std::size_t end = len - (len % 8);
  for (std::size_t i = 0; i < end; i += 8) {
    const std::uint64_t m = read64(data + i);
    v3 ^= m;
    sipround();
    sipround();
    v0 ^= m;
  }

  std::uint64_t last = static_cast<std::uint64_t>(len & 0xff) << 56;
  for (std::size_t i = end; i < len; ++i)
    last |= static_cast<std::uint64_t>(data[i]) << (8 * (i - end));
  v3 ^= last;
  sipround();
  sipround();
  v0 ^= last;

  v2 ^= 0xff;
  sipround();
  sipround();
  sipround();
  sipround();
  return v0 ^ v1 ^ v2 ^ v3;
}

using DomainKey = std::array<std::uint8_t, 16>;

/// Per-domain symmetric key derived from a scenario-level secret; domains
/// never share keys, so a token verifies only under its issuer's key.
inline DomainKey derive_domain_key(std::uint64_t secret, int domain_id) {
  DomainKey key{};
  const std::uint64_t a = splitmix64(secret ^ static_cast<std::uint64_t>(domain_id) * 0x9e3779b97f4a7c15ULL);
  const std::uint64_t b = splitmix64(a ^ 0xa5a5a5a5a5a5a5a5ULL);
  for (int i = 0; i < 8; ++i) {
    key[i] = static_cast<std::uint8_t>(a >> (8 * i));
    key[8 + i] = static_cast<std::uint8_t>(b >> (8 * i));
  }
  return key;
}

class UnknownUeError : public std::runtime_error {
 public:
  explicit UnknownUeError(int ue_id, int domain_id)
      : std::runtime_error("no trust record for ue " + std::to_string(ue_id) + " in domain " +
                           std::to_string(domain_id)) {}
};

/// Signed snapshot of a UE's trust evidence, carried across domains. The tag
/// covers the canonical byte serialization of all prior fields.
struct TrustContextToken {
  int ue_id = 0;
  int issuing_domain = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double t_d = 0.0;
  double issued_at = 0.0;
  std::uint64_t tag = 0;
};

namespace detail {

inline void put_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_f64_le(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

}  // namespace detail

/// Canonical byte layout: fixed field order, little-endian integers and IEEE
/// doubles, so the tag recomputes identically across implementations.
inline std::vector<std::uint8_t> token_signed_bytes(const TrustContextToken& t) {
  std::vector<std::uint8_t> out;
  out.reserve(40);
  detail::put_u32_le(out, static_cast<std::uint32_t>(t.ue_id));
  detail::put_u32_le(out, static_cast<std::uint32_t>(t.issuing_domain));
  detail::put_f64_le(out, t.alpha);
  detail::put_f64_le(out, t.beta);
  detail::put_f64_le(out, t.t_d);
  detail::put_f64_le(out, t.issued_at);
  return out;
}

inline std::vector<std::uint8_t> token_serialize(const TrustContextToken& t) {
  std::vector<std::uint8_t> out = token_signed_bytes(t);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(t.tag >> (8 * i)));
  return out;
}

inline TrustContextToken token_deserialize(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() != 48) throw std::invalid_argument("token must be 48 bytes");
  auto u32 = [&](std::size_t off) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[off + i]) << (8 * i);
    return v;
  };
  auto f64 = [&](std::size_t off) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[off + i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  };
  TrustContextToken t;
  t.ue_id = static_cast<int>(u32(0));
  t.issuing_domain = static_cast<int>(u32(4));
  t.alpha = f64(8);
  t.beta = f64(16);
  t.t_d = f64(24);
  t.issued_at = f64(32);
  std::uint64_t tag = 0;
  for (int i = 0; i < 8; ++i) tag |= static_cast<std::uint64_t>(bytes[40 + i]) << (8 * i);
  t.tag = tag;
  return t;
}

/// Issues a token over the domain's current evidence for the UE.
inline TrustContextToken teu_issue(const TrustRecord& rec, int domain_id, double now,
                                   const DomainKey& domain_key) {
  TrustContextToken t;
  t.ue_id = rec.ue_id;
  t.issuing_domain = domain_id;
  t.alpha = rec.alpha;
  t.beta = rec.beta;
  t.t_d = rec.trust_value();
  t.issued_at = now;
  const auto bytes = token_signed_bytes(t);
  t.tag = siphash24(domain_key.data(), bytes.data(), bytes.size());
  return t;
}

/// True iff the tag recomputes under the issuer key and the token is within
/// the freshness window. Returns false on any failure.
inline bool teu_verify(const TrustContextToken& t, const DomainKey& issuer_key, double now,
                       double freshness_window_ms) {
  const auto bytes = token_signed_bytes(t);
  if (siphash24(issuer_key.data(), bytes.data(), bytes.size()) != t.tag) return false;
  if (t.issued_at > now) return false;
  if (now - t.issued_at > freshness_window_ms) return false;
  return true;
}

}  // namespace es3a
