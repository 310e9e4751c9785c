#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sodsim/errors.hpp"
#include "sodsim/geom.hpp"
#include "sodsim/kernel.hpp"
#include "sodsim/policy.hpp"
#include "sodsim/trust.hpp"

namespace sodsim {

enum class SodType { Static, DynamicClosed, DynamicOpen, Hybrid };
enum class Topology { Centralised, Decentralised, Distributed };

inline const char* to_string(SodType t) {
  switch (t) {
    case SodType::Static: return "static";
    case SodType::DynamicClosed: return "dynamic-closed";
    case SodType::DynamicOpen: return "dynamic-open";
    case SodType::Hybrid: return "hybrid";
  }
  return "unknown";
}

inline const char* to_string(Topology t) {
  switch (t) {
    case Topology::Centralised: return "centralised";
    case Topology::Decentralised: return "decentralised";
    case Topology::Distributed: return "distributed";
  }
  return "unknown";
}

struct SwarmConfig {
  SodType sod_type = SodType::Static;
  Topology topology = Topology::Distributed;
  int cluster_count = 1;      // decentralised only
  double core_weight = 2.0;   // hybrid core vote weight, > 1

  bool valid() const {
    if (cluster_count < 1) return false;
    if (sod_type == SodType::Hybrid && core_weight <= 1.0) return false;
    return true;
  }
};

enum class Ring { Core, Extended };

struct MembershipRecord {
  EntityId drone_id;
  Ring ring = Ring::Core;
  Tick joined_tick = 0;
  std::optional<Tick> left_tick;
  double vote_weight = 1.0;

  bool active() const { return !left_tick.has_value(); }
};

enum class EnrolOutcome {
  AdmittedCore,
  AdmittedExtended,
  RejectedLocked,
  RejectedOrganisation,
  RejectedTrust,
  RejectedPolicy,
  RejectedChannel,
  RejectedAlreadyMember,
};

inline const char* to_string(EnrolOutcome o) {
  switch (o) {
    case EnrolOutcome::AdmittedCore: return "admitted-core";
    case EnrolOutcome::AdmittedExtended: return "admitted-extended";
    case EnrolOutcome::RejectedLocked: return "rejected-locked";
    case EnrolOutcome::RejectedOrganisation: return "rejected-organisation";
    case EnrolOutcome::RejectedTrust: return "rejected-trust";
    case EnrolOutcome::RejectedPolicy: return "rejected-policy";
    case EnrolOutcome::RejectedChannel: return "rejected-channel";
    case EnrolOutcome::RejectedAlreadyMember: return "rejected-already-member";
  }
  return "unknown";
}

inline bool admitted(EnrolOutcome o) {
  return o == EnrolOutcome::AdmittedCore || o == EnrolOutcome::AdmittedExtended;
}

struct EnrolCandidate {
  EntityId id;
  std::string organisation;
  PolicySet policy;
  bool attestation_valid = false;
};

struct ElectCandidate {
  EntityId id;
  double compute_capacity = 0.0;
  Vec3 position;
  bool healthy = true;
};

struct ElectionResult {
  std::optional<EntityId> master;
  std::vector<EntityId> heads;
  std::map<EntityId, EntityId> head_of;  // member -> its cluster head
};

struct LeaveResult {
  bool needs_reelection = false;
};

// Enrolment state machine over the four SoD types plus the vote-weight book.
// Swarm-wide election and vote aggregation live here too.
class SwarmMembership {
 public:
  explicit SwarmMembership(SwarmConfig config = {}) : config_(config) {}

  const SwarmConfig& config() const { return config_; }
  bool commenced() const { return commenced_; }
  void mark_commenced(Tick tick) {
    commenced_ = true;
    commencement_tick_ = tick;
  }

  const std::map<EntityId, MembershipRecord>& members() const { return members_; }

  bool is_member(const EntityId& id) const {
    auto it = members_.find(id);
    return it != members_.end() && it->second.active();
  }

  std::vector<EntityId> active_members() const {
    std::vector<EntityId> out;
    for (const auto& [id, m] : members_) {
      if (m.active()) out.push_back(id);
    }
    return out;
  }

  std::size_t active_count() const { return active_members().size(); }

  // Pre-mission roster loading; bypasses the in-flight gates.
  void add_founding_member(const EntityId& id, Ring ring, Tick tick) {
    MembershipRecord m;
    m.drone_id = id;
    m.ring = ring;
    m.joined_tick = tick;
    m.vote_weight = weight_for(ring);
    members_[id] = m;
  }

  // In-flight enrolment. The trust verdict and channel callback come from the
  // fleet layer; all admissions need a secure channel to at least one member
  // (vacuously satisfied while the swarm is empty).
  EnrolOutcome enrol(const EnrolCandidate& candidate, const std::string& baseline_org,
                     const PolicySet& baseline_policy, Tick tick,
                     const std::function<bool()>& establish_channel) {
    if (is_member(candidate.id)) return EnrolOutcome::RejectedAlreadyMember;

    Ring ring = Ring::Core;
    switch (config_.sod_type) {
      case SodType::Static:
        if (commenced_) return EnrolOutcome::RejectedLocked;
        break;
      case SodType::DynamicClosed:
        if (candidate.organisation != baseline_org) return EnrolOutcome::RejectedOrganisation;
        break;
      case SodType::DynamicOpen:
        break;
      case SodType::Hybrid:
        // The core nucleus is locked at commencement; in-flight joiners form
        // the extended ring.
        ring = commenced_ ? Ring::Extended : Ring::Core;
        break;
    }

    if (!candidate.attestation_valid) return EnrolOutcome::RejectedTrust;
    if (!harmonise_policy(candidate.policy, baseline_policy).compatible) {
      return EnrolOutcome::RejectedPolicy;
    }
    if (active_count() > 0 && !establish_channel()) return EnrolOutcome::RejectedChannel;

    MembershipRecord m;
    m.drone_id = candidate.id;
    m.ring = ring;
    m.joined_tick = tick;
    m.vote_weight = weight_for(ring);
    members_[candidate.id] = m;
    return ring == Ring::Core ? EnrolOutcome::AdmittedCore : EnrolOutcome::AdmittedExtended;
  }

  LeaveResult leave(const EntityId& id, Tick tick) {
    auto it = members_.find(id);
    if (it == members_.end() || !it->second.active()) {
      throw NotMemberError("not a member: " + id);
    }
    it->second.left_tick = tick;
    LeaveResult result;
    result.needs_reelection = (last_election_.master && *last_election_.master == id) ||
                              std::find(last_election_.heads.begin(), last_election_.heads.end(),
                                        id) != last_election_.heads.end();
    return result;
  }

  // Vote weight drops to zero on detection; reinstatement is possible since
  // the counter can recover.
  void set_free_rider(const EntityId& id, bool flagged) {
    auto it = members_.find(id);
    if (it == members_.end()) return;
    it->second.vote_weight = flagged ? 0.0 : weight_for(it->second.ring);
  }

  Ring ring_of(const EntityId& id) const {
    auto it = members_.find(id);
    if (it == members_.end()) throw NotMemberError("not a member: " + id);
    return it->second.ring;
  }

  // "Powerful" resolves to compute capacity; ties go to the lowest id.
  ElectionResult elect(const std::vector<ElectCandidate>& snapshot) {
    std::vector<ElectCandidate> healthy;
    for (const auto& c : snapshot) {
      if (c.healthy && is_member(c.id)) healthy.push_back(c);
    }
    if (healthy.empty()) throw NoHealthyMembersError("no healthy members to elect");
    std::sort(healthy.begin(), healthy.end(), [](const ElectCandidate& a, const ElectCandidate& b) {
      if (a.compute_capacity != b.compute_capacity) return a.compute_capacity > b.compute_capacity;
      return a.id < b.id;
    });

    ElectionResult result;
    switch (config_.topology) {
      case Topology::Centralised:
        result.master = healthy.front().id;
        break;
      case Topology::Decentralised: {
        std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(config_.cluster_count),
                                              healthy.size());
        for (std::size_t i = 0; i < k; ++i) result.heads.push_back(healthy[i].id);
        std::sort(result.heads.begin(), result.heads.end());
        for (const auto& c : healthy) {
          const EntityId* best = nullptr;
          double best_d = 0.0;
          for (const auto& h : result.heads) {
            auto hit = std::find_if(healthy.begin(), healthy.end(),
                                    [&](const ElectCandidate& x) { return x.id == h; });
            double d = distance(c.position, hit->position);
            if (!best || d < best_d || (d == best_d && h < *best)) {
              best = &h;
              best_d = d;
            }
          }
          result.head_of[c.id] = *best;
        }
        break;
      }
      case Topology::Distributed:
        break;
    }
    last_election_ = result;
    return result;
  }

  const ElectionResult& last_election() const { return last_election_; }

  double vote_weight(const EntityId& id) const {
    auto it = members_.find(id);
    return it == members_.end() || !it->second.active() ? 0.0 : it->second.vote_weight;
  }

 private:
  double weight_for(Ring ring) const {
    if (config_.sod_type == SodType::Hybrid && ring == Ring::Core) return config_.core_weight;
    return 1.0;
  }

  SwarmConfig config_;
  std::map<EntityId, MembershipRecord> members_;
  bool commenced_ = false;
  Tick commencement_tick_ = 0;
  ElectionResult last_election_;
};

// Scored proposal of one drone: option id -> score. A drone's vote is its
// argmax, ties to the lowest option id.
using Proposal = std::map<std::string, double>;

inline std::string proposal_vote(const Proposal& p) {
  std::string best;
  double best_score = 0.0;
  for (const auto& [option, score] : p) {
    if (best.empty() || score > best_score) {
      best = option;
      best_score = score;
    }
  }
  return best;
}

namespace membership_detail {

inline std::string weighted_plurality(const std::map<std::string, double>& tally) {
  std::string best;
  double best_w = -1.0;
  for (const auto& [option, w] : tally) {
    if (w > best_w) {
      best = option;
      best_w = w;
    }
  }
  return best;  // map order makes ties resolve to the lowest option id
}

}  // namespace membership_detail

// Centralised adopts the master's own argmax; decentralised lets each head
// vote its cluster's weighted plurality, then weights head votes by cluster
// size; distributed is a weighted plurality over everyone. All ties fall to
// the lowest option id.
inline std::string aggregate_votes(const SwarmMembership& membership,
                                   const std::map<EntityId, Proposal>& proposals,
                                   const ElectionResult& election) {
  if (proposals.empty()) throw NoProposalsError("no proposals to aggregate");

  switch (membership.config().topology) {
    case Topology::Centralised:
      if (election.master) {
        if (auto it = proposals.find(*election.master); it != proposals.end()) {
          return proposal_vote(it->second);
        }
      }
      break;  // master silent or absent: degrade to the distributed tally
    case Topology::Decentralised: {
      if (!election.heads.empty()) {
        std::map<EntityId, std::map<std::string, double>> cluster_tally;
        std::map<EntityId, double> cluster_size;
        for (const auto& [drone, proposal] : proposals) {
          auto at = election.head_of.find(drone);
          if (at == election.head_of.end()) continue;
          cluster_tally[at->second][proposal_vote(proposal)] += membership.vote_weight(drone);
          cluster_size[at->second] += 1.0;
        }
        std::map<std::string, double> head_tally;
        for (const auto& [head, tally] : cluster_tally) {
          head_tally[membership_detail::weighted_plurality(tally)] += cluster_size[head];
        }
        if (!head_tally.empty()) return membership_detail::weighted_plurality(head_tally);
      }
      break;
    }
    case Topology::Distributed:
      break;
  }

  std::map<std::string, double> tally;
  for (const auto& [drone, proposal] : proposals) {
    tally[proposal_vote(proposal)] += membership.vote_weight(drone);
  }
  return membership_detail::weighted_plurality(tally);
}

}  // namespace sodsim
