#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sodsim/errors.hpp"
#include "sodsim/kernel.hpp"
#include "sodsim/rng.hpp"

namespace sodsim {

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

struct SituationSignature {
  std::set<std::string> tokens;

  bool valid() const { return !tokens.empty(); }
  friend bool operator==(const SituationSignature&, const SituationSignature&) = default;

  std::string joined() const {
    std::string out;
    for (const auto& t : tokens) {
      if (!out.empty()) out += ',';
      out += t;
    }
    return out;
  }

  std::uint64_t digest() const { return fnv1a64(joined()); }
};

inline double jaccard(const SituationSignature& a, const SituationSignature& b) {
  if (a.tokens.empty() && b.tokens.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto& t : a.tokens) {
    if (b.tokens.contains(t)) ++inter;
  }
  std::size_t uni = a.tokens.size() + b.tokens.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

struct PrecedentRecord {
  SituationSignature signature;
  std::string decision;
  double outcome_score = 0.0;  // in [0,1]
  std::string mission_id;
  Tick tick = 0;

  friend bool operator==(const PrecedentRecord&, const PrecedentRecord&) = default;

  // Stable line format shared with the persistent knowledge store.
  std::string to_line() const {
    std::ostringstream os;
    os << "precedent|" << mission_id << '|' << tick << '|' << decision << '|'
       << format_double(outcome_score) << '|' << signature.joined();
    return os.str();
  }

  static std::optional<PrecedentRecord> from_line(const std::string& line) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : line) {
      if (c == '|') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    if (parts.size() != 6 || parts[0] != "precedent") return std::nullopt;
    PrecedentRecord r;
    r.mission_id = parts[1];
    try {
      r.tick = std::stoll(parts[2]);
      r.outcome_score = std::stod(parts[4]);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    r.decision = parts[3];
    std::string tok;
    for (char c : parts[5]) {
      if (c == ',') {
        if (!tok.empty()) r.signature.tokens.insert(tok);
        tok.clear();
      } else {
        tok += c;
      }
    }
    if (!tok.empty()) r.signature.tokens.insert(tok);
    return r;
  }
};

// In-memory precedent collection: per-drone shards and the consolidated store
// both use it. Content-addressed by (signature, decision, mission); re-adding
// keeps the highest outcome score.
class KnowledgeBase {
 public:
  void add(const PrecedentRecord& record) {
    for (auto& existing : records_) {
      if (existing.signature == record.signature && existing.decision == record.decision &&
          existing.mission_id == record.mission_id) {
        existing.outcome_score = std::max(existing.outcome_score, record.outcome_score);
        existing.tick = std::min(existing.tick, record.tick);
        return;
      }
    }
    records_.push_back(record);
  }

  const std::vector<PrecedentRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  void clear() { records_.clear(); }

 private:
  std::vector<PrecedentRecord> records_;
};

struct SituationEvaluation {
  bool novel = true;
  PrecedentRecord best;
};

// Exact-signature matches take precedence; otherwise any record with Jaccard
// similarity >= sigma competes. Best = highest score, then most recent
// mission (greater mission id), then lowest tick.
inline SituationEvaluation evaluate_situation(const SituationSignature& sig,
                                              const KnowledgeBase& kb, double sigma) {
  auto better = [](const PrecedentRecord& a, const PrecedentRecord& b) {
    if (a.outcome_score != b.outcome_score) return a.outcome_score > b.outcome_score;
    if (a.mission_id != b.mission_id) return a.mission_id > b.mission_id;
    if (a.tick != b.tick) return a.tick < b.tick;
    return a.decision < b.decision;
  };

  SituationEvaluation result;
  bool exact_found = false;
  for (const auto& r : kb.records()) {
    bool exact = r.signature == sig;
    if (exact_found && !exact) continue;
    if (!exact && jaccard(sig, r.signature) < sigma) continue;
    if (exact && !exact_found) {
      exact_found = true;
      result.novel = false;
      result.best = r;
      continue;
    }
    if (result.novel || better(r, result.best)) {
      result.novel = false;
      result.best = r;
    }
  }
  return result;
}

// Rendezvous hashing of (signature digest, drone id): the k highest scores
// hold replicas, so any surviving holder can answer a lookup.
inline std::vector<EntityId> replica_holders(std::uint64_t signature_digest,
                                             const std::vector<EntityId>& drones,
                                             std::size_t k) {
  struct Scored {
    std::uint64_t score;
    EntityId id;
  };
  std::vector<Scored> scored;
  scored.reserve(drones.size());
  for (const auto& d : drones) {
    scored.push_back({rng_detail::mix64(signature_digest ^ fnv1a64(d)), d});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  std::vector<EntityId> out;
  for (std::size_t i = 0; i < scored.size() && i < k; ++i) out.push_back(scored[i].id);
  return out;
}

}  // namespace sodsim
