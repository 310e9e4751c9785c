#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "sodsim/kernel.hpp"
#include "sodsim/policy.hpp"
#include "sodsim/radio.hpp"

namespace sodsim {

enum class TrustLevel { Untrusted, Conditional, Trusted };

inline const char* to_string(TrustLevel t) {
  switch (t) {
    case TrustLevel::Untrusted: return "untrusted";
    case TrustLevel::Conditional: return "conditional";
    case TrustLevel::Trusted: return "trusted";
  }
  return "unknown";
}

struct TrustEvidence {
  bool attestation_valid = false;
  bool same_organisation = false;
  bool policy_compatible = false;
};

struct TrustVerdict {
  EntityId subject;
  TrustLevel level = TrustLevel::Untrusted;
  TrustEvidence evidence;
};

struct AttestationToken {
  EntityId subject;
  Tick expires_tick = 0;
  bool revoked = false;

  bool valid(Tick now) const { return !revoked && now <= expires_tick; }
};

using TokenStore = std::map<EntityId, AttestationToken>;

// Trusted needs all three evidence bits; a valid, policy-compatible drone from
// a foreign organisation lands at Conditional; anything less is Untrusted.
inline TrustVerdict verify_trust(const EntityId& subject, const std::string& subject_org,
                                 const PolicySet& subject_policy, const std::string& baseline_org,
                                 const PolicySet& baseline_policy, const TokenStore& tokens,
                                 Tick now) {
  TrustVerdict v;
  v.subject = subject;
  if (auto it = tokens.find(subject); it != tokens.end()) {
    v.evidence.attestation_valid = it->second.valid(now);
  }
  v.evidence.same_organisation = subject_org == baseline_org;
  v.evidence.policy_compatible = harmonise_policy(subject_policy, baseline_policy).compatible;

  if (v.evidence.attestation_valid && v.evidence.policy_compatible) {
    v.level = v.evidence.same_organisation ? TrustLevel::Trusted : TrustLevel::Conditional;
  } else {
    v.level = TrustLevel::Untrusted;
  }
  return v;
}

enum class SessionState { Active, Compromised, Closed };

struct SecureSession {
  std::uint64_t session_id = 0;
  EntityId endpoint_a;  // endpoints stored in sorted order
  EntityId endpoint_b;
  std::string key_id;
  Tick established_tick = 0;
  SessionState state = SessionState::Closed;
};

// At most one Active session per unordered endpoint pair; a compromised
// session never returns to Active, re-establishing mints a new one.
class SessionTable {
 public:
  using Pair = std::pair<EntityId, EntityId>;

  static Pair normalize(const EntityId& a, const EntityId& b) {
    return a <= b ? Pair{a, b} : Pair{b, a};
  }

  const SecureSession* active(const EntityId& a, const EntityId& b) const {
    auto it = sessions_.find(normalize(a, b));
    if (it == sessions_.end() || it->second.state != SessionState::Active) return nullptr;
    return &it->second;
  }

  SecureSession& open(const EntityId& a, const EntityId& b, Tick now) {
    Pair key = normalize(a, b);
    SecureSession s;
    s.session_id = ++next_id_;
    s.endpoint_a = key.first;
    s.endpoint_b = key.second;
    s.key_id = "key-" + std::to_string(s.session_id);
    s.established_tick = now;
    s.state = SessionState::Active;
    return sessions_[key] = s;
  }

  void compromise_all(const EntityId& node) {
    for (auto& [key, s] : sessions_) {
      if ((key.first == node || key.second == node) && s.state == SessionState::Active) {
        s.state = SessionState::Compromised;
      }
    }
  }

  void close_all(const EntityId& node) {
    for (auto& [key, s] : sessions_) {
      if ((key.first == node || key.second == node) && s.state == SessionState::Active) {
        s.state = SessionState::Closed;
      }
    }
  }

  const std::map<Pair, SecureSession>& sessions() const { return sessions_; }

 private:
  std::map<Pair, SecureSession> sessions_;
  std::uint64_t next_id_ = 0;
};

enum class HandshakeStatus { Established, HandshakeFailed, Unreachable, TrustDenied };

struct HandshakeResult {
  HandshakeStatus status = HandshakeStatus::HandshakeFailed;
  const SecureSession* session = nullptr;
  int attempts = 0;
};

// Simulated 3-message handshake; each message rides the routed channel and can
// be lost per hop. One initial attempt plus up to three retries.
inline HandshakeResult establish_secure_channel(
    const RadioWorld& world, const EntityId& a, const EntityId& b, const NetParams& params,
    SessionTable& table, const std::function<RngStream&(const EntityId&)>& rng_for,
    TrustLevel trust_a, TrustLevel trust_b, Tick now) {
  HandshakeResult result;
  if (const auto* existing = table.active(a, b)) {
    result.status = HandshakeStatus::Established;
    result.session = existing;
    return result;
  }
  if (trust_a < TrustLevel::Conditional || trust_b < TrustLevel::Conditional) {
    result.status = HandshakeStatus::TrustDenied;
    return result;
  }
  if (!route(world, a, b)) {
    result.status = HandshakeStatus::Unreachable;
    return result;
  }

  constexpr int kMaxAttempts = 4;  // 1 + 3 retries
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    ++result.attempts;
    bool all_delivered = true;
    const EntityId* from = &a;
    const EntityId* to = &b;
    for (int msg = 0; msg < 3; ++msg) {
      NetMessage m;
      m.source = *from;
      m.destination = *to;
      m.payload_kind = "handshake";
      m.size_bytes = 64;
      auto outcome = deliver(world, m, params, rng_for);
      if (outcome.empty() || outcome.front().status != DeliveryStatus::Delivered) {
        all_delivered = false;
        break;
      }
      std::swap(from, to);
    }
    if (all_delivered) {
      result.status = HandshakeStatus::Established;
      result.session = &table.open(a, b, now);
      return result;
    }
  }
  result.status = HandshakeStatus::HandshakeFailed;
  return result;
}

}  // namespace sodsim
