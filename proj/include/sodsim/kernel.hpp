#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "sodsim/errors.hpp"
#include "sodsim/rng.hpp"

namespace sodsim {

using Tick = std::int64_t;
using EntityId = std::string;

// Closed vocabulary of simulation events.
enum class EventKind {
  MessageArrive,
  ObstacleDetected,
  JamStart,
  JamEnd,
  EnrolRequest,
  Capture,
  PowerReport,
  DroneTick,
  WindowClose,
  ObstacleAppears,
  Injunction,
  BriefUpload,
  BriefAck,
  ChannelSetup,
  Permission,
  Assessment,
  ServiceCheck,
  Decision,
  Election,
  Sacrifice,
  ReturnCheck,
  MissionEnd,
  Replication,
};

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::MessageArrive: return "message-arrive";
    case EventKind::ObstacleDetected: return "obstacle-detected";
    case EventKind::JamStart: return "jam-start";
    case EventKind::JamEnd: return "jam-end";
    case EventKind::EnrolRequest: return "enrol-request";
    case EventKind::Capture: return "capture";
    case EventKind::PowerReport: return "power-report";
    case EventKind::DroneTick: return "drone-tick";
    case EventKind::WindowClose: return "window-close";
    case EventKind::ObstacleAppears: return "obstacle-appears";
    case EventKind::Injunction: return "injunction";
    case EventKind::BriefUpload: return "brief-upload";
    case EventKind::BriefAck: return "brief-ack";
    case EventKind::ChannelSetup: return "channel-setup";
    case EventKind::Permission: return "permission";
    case EventKind::Assessment: return "assessment";
    case EventKind::ServiceCheck: return "service-check";
    case EventKind::Decision: return "decision";
    case EventKind::Election: return "election";
    case EventKind::Sacrifice: return "sacrifice";
    case EventKind::ReturnCheck: return "return-check";
    case EventKind::MissionEnd: return "mission-end";
    case EventKind::Replication: return "replication";
  }
  return "unknown";
}

struct SimEvent {
  Tick fire_tick = 0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::DroneTick;
  EntityId target;
  std::string payload;
};

struct TelemetryRecord {
  Tick tick = 0;
  std::uint64_t seq = 0;
  EntityId entity;
  std::string kind;
  std::uint64_t payload_digest = 0;
};

inline constexpr const char* kTelemetryHeader = "# sodsim-telemetry v1";

class TelemetryLog {
 public:
  void append(const SimEvent& ev) {
    records_.push_back({ev.fire_tick, ev.seq, ev.target, to_string(ev.kind), fnv1a64(ev.payload)});
  }

  const std::vector<TelemetryRecord>& records() const { return records_; }

  static std::string line(const TelemetryRecord& r) {
    std::ostringstream os;
    os << r.tick << ' ' << r.seq << ' ' << r.entity << ' ' << r.kind << ' ' << std::hex
       << r.payload_digest;
    return os.str();
  }

  std::string to_text() const {
    std::string out = kTelemetryHeader;
    out += '\n';
    for (const auto& r : records_) {
      out += line(r);
      out += '\n';
    }
    return out;
  }

  // Digest over the serialized log; equal seeds must reproduce it bit for bit.
  std::uint64_t digest() const { return fnv1a64(to_text()); }

 private:
  std::vector<TelemetryRecord> records_;
};

// Flat key/value run summary, serialized one "key = value" per line in key order.
class MetricsSummary {
 public:
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  void set(const std::string& key, double value) {
    std::ostringstream os;
    os.precision(12);
    os << value;
    values_[key] = os.str();
  }
  void set(const std::string& key, std::int64_t value) { values_[key] = std::to_string(value); }
  void increment(const std::string& key, std::int64_t by = 1) {
    std::int64_t cur = 0;
    if (auto it = values_.find(key); it != values_.end()) cur = std::stoll(it->second);
    values_[key] = std::to_string(cur + by);
  }

  const std::string* find(const std::string& key) const {
    auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

  std::string to_text() const {
    std::string out;
    for (const auto& [k, v] : values_) {
      out += k;
      out += " = ";
      out += v;
      out += '\n';
    }
    return out;
  }

 private:
  std::map<std::string, std::string> values_;
};

// Deterministic discrete-event engine. Events fire in (tick, seq) order; all
// randomness flows through per-entity forked substreams of the root seed.
class Kernel {
 public:
  using Handler = std::function<void(const SimEvent&)>;

  explicit Kernel(std::uint64_t root_seed, double tick_seconds = 1.0)
      : root_seed_(root_seed), tick_seconds_(tick_seconds) {}

  Tick now() const { return now_; }
  double tick_seconds() const { return tick_seconds_; }
  std::uint64_t root_seed() const { return root_seed_; }

  void set_handler(Handler h) { handler_ = std::move(h); }

  std::uint64_t schedule(Tick fire_tick, EventKind kind, EntityId target, std::string payload = {}) {
    if (fire_tick < now_) {
      throw PastEventError("schedule at tick " + std::to_string(fire_tick) + " before now " +
                           std::to_string(now_));
    }
    SimEvent ev{fire_tick, next_seq_++, kind, std::move(target), std::move(payload)};
    queue_.push(ev);
    return ev.seq;
  }

  MetricsSummary run_until(Tick t_end) {
    if (t_end < now_) {
      throw PastEventError("run_until " + std::to_string(t_end) + " before now " +
                           std::to_string(now_));
    }
    while (!queue_.empty() && queue_.top().fire_tick <= t_end) {
      SimEvent ev = queue_.top();
      queue_.pop();
      if (ev.fire_tick < now_) throw InternalError("clock-monotonicity");
      now_ = ev.fire_tick;
      telemetry_.append(ev);
      metrics_.increment("events.processed");
      metrics_.increment(std::string("events.by_kind.") + to_string(ev.kind));
      if (handler_) handler_(ev);
      if (stop_requested_) break;
    }
    if (!stop_requested_ && now_ < t_end) now_ = t_end;
    metrics_.set("final_tick", static_cast<std::int64_t>(now_));
    return metrics_;
  }

  // Terminates the run loop after the current event; used by terminal-phase stop conditions.
  void request_stop() { stop_requested_ = true; }
  bool stop_requested() const { return stop_requested_; }

  // Repeated forks for the same entity resume the same draw counter.
  RngStream& fork_rng(const EntityId& entity) {
    auto it = streams_.find(entity);
    if (it == streams_.end()) {
      it = streams_.emplace(entity, RngStream(root_seed_, entity)).first;
    }
    return it->second;
  }

  const TelemetryLog& telemetry() const { return telemetry_; }
  MetricsSummary& metrics() { return metrics_; }
  const MetricsSummary& metrics() const { return metrics_; }
  bool queue_empty() const { return queue_.empty(); }

 private:
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      if (a.fire_tick != b.fire_tick) return a.fire_tick > b.fire_tick;
      return a.seq > b.seq;
    }
  };

  std::uint64_t root_seed_;
  double tick_seconds_;
  Tick now_ = 0;
  std::uint64_t next_seq_ = 0;
  bool stop_requested_ = false;
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> queue_;
  std::map<EntityId, RngStream> streams_;
  Handler handler_;
  TelemetryLog telemetry_;
  MetricsSummary metrics_;
};

}  // namespace sodsim
