#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sodsim/errors.hpp"
#include "sodsim/geom.hpp"
#include "sodsim/kernel.hpp"
#include "sodsim/rng.hpp"

namespace sodsim {

enum class NodeKind { Drone, GroundStation };

struct RadioNode {
  EntityId id;
  Vec3 position;
  double range_m = 0.0;
  std::string organisation;
  NodeKind kind = NodeKind::Drone;
  bool captured = false;
  bool grounded = false;  // energy-depleted drones drop out of the link graph
};

struct JammingRegion {
  std::string id;
  Vec3 center;
  double radius_m = 0.0;
  Tick start_tick = 0;
  Tick end_tick = 0;

  bool active(Tick t) const { return t >= start_tick && t <= end_tick; }
  bool covers(Vec3 p) const { return distance(center, p) <= radius_m; }
};

struct NetMessage {
  std::uint64_t id = 0;
  EntityId source;
  EntityId destination;  // empty means broadcast to link neighbors
  std::string payload_kind;
  std::size_t size_bytes = 1;
  std::optional<std::uint64_t> session_id;

  bool broadcast() const { return destination.empty(); }
};

struct NetParams {
  double p_loss = 0.0;
  Tick hop_latency_ticks = 1;
};

// Snapshot of every radio endpoint plus jamming state at one tick.
struct RadioWorld {
  std::map<EntityId, RadioNode> nodes;
  std::vector<JammingRegion> jams;
  Tick tick = 0;

  bool jammed(Vec3 p) const {
    for (const auto& j : jams) {
      if (j.active(tick) && j.covers(p)) return true;
    }
    return false;
  }

  const RadioNode& at(const EntityId& id) const {
    auto it = nodes.find(id);
    if (it == nodes.end()) throw UnknownNodeError("unknown radio node: " + id);
    return it->second;
  }

  bool in_graph(const RadioNode& n) const { return !n.captured && !n.grounded; }

  // Symmetric link: within min of both ranges, neither endpoint jammed.
  bool linked(const RadioNode& a, const RadioNode& b) const {
    if (a.id == b.id) return false;
    if (!in_graph(a) || !in_graph(b)) return false;
    if (distance(a.position, b.position) > std::min(a.range_m, b.range_m)) return false;
    if (jammed(a.position) || jammed(b.position)) return false;
    return true;
  }
};

inline std::vector<EntityId> neighbors(const RadioWorld& world, const EntityId& id) {
  const RadioNode& self = world.at(id);
  std::vector<EntityId> out;
  if (!world.in_graph(self)) return out;
  for (const auto& [other_id, other] : world.nodes) {
    if (world.linked(self, other)) out.push_back(other_id);
  }
  return out;  // map order keeps this sorted
}

// Minimum-hop path, ties broken by the lexicographically smallest id sequence.
inline std::optional<std::vector<EntityId>> route(const RadioWorld& world, const EntityId& source,
                                                  const EntityId& dest) {
  const RadioNode& src = world.at(source);
  const RadioNode& dst = world.at(dest);
  if (source == dest) return std::vector<EntityId>{source};
  if (!world.in_graph(src) || !world.in_graph(dst)) return std::nullopt;

  // BFS from dest gives hop distances; a greedy smallest-id descent from the
  // source then yields the lexicographically least shortest path.
  std::map<EntityId, int> dist;
  dist[dest] = 0;
  std::deque<EntityId> frontier{dest};
  while (!frontier.empty()) {
    EntityId cur = frontier.front();
    frontier.pop_front();
    for (const auto& n : neighbors(world, cur)) {
      if (!dist.contains(n)) {
        dist[n] = dist[cur] + 1;
        frontier.push_back(n);
      }
    }
  }
  auto it = dist.find(source);
  if (it == dist.end()) return std::nullopt;

  std::vector<EntityId> path{source};
  EntityId cur = source;
  while (cur != dest) {
    int d = dist[cur];
    for (const auto& n : neighbors(world, cur)) {
      auto dn = dist.find(n);
      if (dn != dist.end() && dn->second == d - 1) {
        cur = n;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

enum class DeliveryStatus { Delivered, Lost, Unreachable };

struct Delivery {
  DeliveryStatus status = DeliveryStatus::Unreachable;
  EntityId destination;
  Tick at_tick = 0;
  std::vector<EntityId> path;
};

// Routes the message and rolls per-hop loss on the transmitting node's stream.
// Broadcast yields one outcome per link neighbor, each with independent loss.
inline std::vector<Delivery> deliver(const RadioWorld& world, const NetMessage& msg,
                                     const NetParams& params,
                                     const std::function<RngStream&(const EntityId&)>& rng_for) {
  std::vector<Delivery> out;
  if (msg.broadcast()) {
    for (const auto& n : neighbors(world, msg.source)) {
      Delivery d;
      d.destination = n;
      d.path = {msg.source, n};
      bool lost = params.p_loss > 0.0 && rng_for(msg.source).bernoulli(params.p_loss);
      if (params.p_loss >= 1.0) lost = true;
      d.status = lost ? DeliveryStatus::Lost : DeliveryStatus::Delivered;
      d.at_tick = world.tick + params.hop_latency_ticks;
      out.push_back(std::move(d));
    }
    return out;
  }

  Delivery d;
  d.destination = msg.destination;
  auto path = route(world, msg.source, msg.destination);
  if (!path) {
    d.status = DeliveryStatus::Unreachable;
    out.push_back(std::move(d));
    return out;
  }
  d.path = *path;
  d.status = DeliveryStatus::Delivered;
  for (std::size_t i = 0; i + 1 < d.path.size(); ++i) {
    bool lost = params.p_loss > 0.0 && rng_for(d.path[i]).bernoulli(params.p_loss);
    if (params.p_loss >= 1.0) lost = true;
    if (lost) {
      d.status = DeliveryStatus::Lost;
      break;
    }
  }
  Tick hops = static_cast<Tick>(d.path.size()) - 1;
  d.at_tick = world.tick + hops * params.hop_latency_ticks;
  out.push_back(std::move(d));
  return out;
}

// Removes a drone from the link graph. Session compromise and swarm
// notification are wired by the caller that owns those tables.
inline void apply_capture(RadioWorld& world, const EntityId& id) {
  auto it = world.nodes.find(id);
  if (it == world.nodes.end()) throw UnknownNodeError("unknown radio node: " + id);
  if (it->second.kind != NodeKind::Drone) {
    throw UnknownNodeError("capture target is not a drone: " + id);
  }
  it->second.captured = true;
}

}  // namespace sodsim
