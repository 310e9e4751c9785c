#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sodsim/errors.hpp"
#include "sodsim/geom.hpp"
#include "sodsim/kernel.hpp"
#include "sodsim/policy.hpp"

namespace sodsim {

struct Route {
  std::vector<Vec3> waypoints;
  std::vector<double> leg_speed_mps;       // one entry per leg
  double estimated_energy_per_drone_j = 0.0;

  double total_length_m() const {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
      len += distance(waypoints[i], waypoints[i + 1]);
    }
    return len;
  }
};

struct AirspaceViolation {
  std::string rule_id;
  bool on_leg = false;     // false: waypoint index, true: leg index
  std::size_t index = 0;
};

struct AirspaceCheck {
  bool compliant = true;
  std::vector<AirspaceViolation> violations;
};

// Every waypoint and every leg segment is checked against every rule; the
// complete violation list comes back, not just the first hit.
inline AirspaceCheck check_airspace(const Route& route, const PolicySet& airspace) {
  AirspaceCheck result;
  for (std::size_t i = 0; i < route.waypoints.size(); ++i) {
    std::string rule;
    if (!airspace.position_allowed(route.waypoints[i], &rule)) {
      result.violations.push_back({rule, false, i});
    }
  }
  for (std::size_t i = 0; i + 1 < route.waypoints.size(); ++i) {
    Vec3 a = route.waypoints[i];
    Vec3 b = route.waypoints[i + 1];
    Vec2 a2{a.x, a.y}, b2{b.x, b.y};
    bool leg_hit = false;
    for (const auto& poly : airspace.forbidden) {
      if (segment_intersects_polygon(a2, b2, poly)) {
        leg_hit = true;
        break;
      }
    }
    if (leg_hit) {
      result.violations.push_back({"geofence", true, i});
      continue;
    }
    // Allowed-group containment along the leg is sampled at the midpoint;
    // endpoints are already covered by the waypoint pass.
    Vec3 mid = (a + b) * 0.5;
    std::string rule;
    if (!airspace.allowed_groups.empty() && !airspace.position_allowed(mid, &rule)) {
      result.violations.push_back({rule, true, i});
    }
  }
  result.compliant = result.violations.empty();
  return result;
}

namespace fleet_detail {

inline bool waypoints_less(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  auto key = [](Vec3 v) { return std::tuple{v.x, v.y, v.z}; };
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [&](Vec3 x, Vec3 y) { return key(x) < key(y); });
}

// Nearest-neighbor orderings with full branching on exact distance ties.
inline void nearest_neighbor_orders(Vec3 at, std::vector<Vec3> remaining, std::vector<Vec3>& prefix,
                                    std::vector<std::vector<Vec3>>& out) {
  if (remaining.empty()) {
    out.push_back(prefix);
    return;
  }
  double best = -1.0;
  for (const auto& c : remaining) {
    double d = distance(at, c);
    if (best < 0.0 || d < best) best = d;
  }
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    if (distance(at, remaining[i]) != best) continue;
    Vec3 next = remaining[i];
    std::vector<Vec3> rest = remaining;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    prefix.push_back(next);
    nearest_neighbor_orders(next, std::move(rest), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace fleet_detail

// Nearest-neighbor tour over the areas of interest, filtered for airspace
// compliance; shortest compliant candidate wins, ties by lexicographic
// waypoint order. Nullopt means no compliant route exists.
inline std::optional<Route> plan_route(Vec3 start, const std::vector<Vec3>& areas,
                                       const PolicySet& airspace, double cruise_speed_mps) {
  if (areas.empty()) return std::nullopt;
  std::vector<std::vector<Vec3>> orders;
  std::vector<Vec3> prefix;
  fleet_detail::nearest_neighbor_orders(start, areas, prefix, orders);

  std::optional<Route> best;
  for (const auto& order : orders) {
    Route candidate;
    candidate.waypoints.push_back(start);
    candidate.waypoints.insert(candidate.waypoints.end(), order.begin(), order.end());
    candidate.leg_speed_mps.assign(candidate.waypoints.size() - 1, cruise_speed_mps);
    if (!check_airspace(candidate, airspace).compliant) continue;
    if (!best || candidate.total_length_m() < best->total_length_m() ||
        (candidate.total_length_m() == best->total_length_m() &&
         fleet_detail::waypoints_less(candidate.waypoints, best->waypoints))) {
      best = candidate;
    }
  }
  return best;
}

struct TimeWindow {
  Tick start = 0;
  Tick end = 0;
  bool overlaps(TimeWindow o) const { return start <= o.end && o.start <= end; }
};

struct TimedRoute {
  std::string id;
  std::vector<Vec3> waypoints;
  std::vector<TimeWindow> leg_windows;  // one per leg
};

struct LegCongestion {
  std::size_t leg_index = 0;
  int count = 0;
  bool flagged = false;
};

struct CongestionReport {
  std::vector<LegCongestion> legs;
  bool any_flagged = false;
};

// Counts foreign routes passing within d_congest of each leg during an
// overlapping window; counts strictly over the threshold get flagged.
inline CongestionReport detect_congestion(const TimedRoute& own,
                                          const std::vector<TimedRoute>& traffic,
                                          double d_congest_m, int threshold) {
  CongestionReport report;
  for (std::size_t i = 0; i + 1 < own.waypoints.size(); ++i) {
    LegCongestion leg;
    leg.leg_index = i;
    TimeWindow w = i < own.leg_windows.size() ? own.leg_windows[i] : TimeWindow{};
    for (const auto& foreign : traffic) {
      bool near = false;
      for (std::size_t j = 0; j + 1 < foreign.waypoints.size() && !near; ++j) {
        TimeWindow fw = j < foreign.leg_windows.size() ? foreign.leg_windows[j] : TimeWindow{};
        if (!w.overlaps(fw)) continue;
        double d = segment_segment_distance(own.waypoints[i], own.waypoints[i + 1],
                                            foreign.waypoints[j], foreign.waypoints[j + 1]);
        near = d <= d_congest_m;
      }
      if (near) ++leg.count;
    }
    leg.flagged = leg.count > threshold;
    report.any_flagged = report.any_flagged || leg.flagged;
    report.legs.push_back(leg);
  }
  return report;
}

struct WorkTask {
  std::string id;
  double work_units = 0.0;
  std::string required_capability;
};

struct LoadCandidate {
  EntityId id;
  double compute_capacity = 1.0;
  bool severe = false;
  bool healthy = true;
  bool trusted = true;
  double energy_budget_units = -1.0;  // work units fundable above reserve; negative = unlimited
  std::set<std::string> capabilities;
};

struct LoadAssignment {
  std::map<std::string, EntityId> task_to_drone;
  std::map<EntityId, double> load_units;

  double makespan(const std::vector<LoadCandidate>& drones) const {
    double worst = 0.0;
    for (const auto& d : drones) {
      auto it = load_units.find(d.id);
      if (it == load_units.end()) continue;
      if (d.compute_capacity > 0.0) worst = std::max(worst, it->second / d.compute_capacity);
    }
    return worst;
  }
};

// Longest-processing-time-first onto the eligible drone with the most
// remaining normalized headroom; SEVERE and untrusted drones never receive
// work. Throws when a task has no eligible drone at all.
inline LoadAssignment balance_load(std::vector<WorkTask> tasks,
                                   const std::vector<LoadCandidate>& drones) {
  std::sort(tasks.begin(), tasks.end(), [](const WorkTask& a, const WorkTask& b) {
    if (a.work_units != b.work_units) return a.work_units > b.work_units;
    return a.id < b.id;
  });
  LoadAssignment result;
  for (const auto& task : tasks) {
    const LoadCandidate* chosen = nullptr;
    double chosen_load = 0.0;
    for (const auto& d : drones) {
      if (d.severe || !d.trusted || !d.healthy || d.compute_capacity <= 0.0) continue;
      if (!d.capabilities.contains(task.required_capability)) continue;
      double load = result.load_units.count(d.id) ? result.load_units.at(d.id) : 0.0;
      if (d.energy_budget_units >= 0.0 && load + task.work_units > d.energy_budget_units) continue;
      double normalized = load / d.compute_capacity;
      if (!chosen || normalized < chosen_load / chosen->compute_capacity ||
          (normalized == chosen_load / chosen->compute_capacity && d.id < chosen->id)) {
        chosen = &d;
        chosen_load = load;
      }
    }
    if (!chosen) throw InfeasibleTaskError("no eligible drone for task " + task.id);
    result.task_to_drone[task.id] = chosen->id;
    result.load_units[chosen->id] = chosen_load + task.work_units;
  }
  return result;
}

}  // namespace sodsim
