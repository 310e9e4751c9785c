#pragma once

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sodsim/energy.hpp"
#include "sodsim/geom.hpp"
#include "sodsim/kernel.hpp"
#include "sodsim/policy.hpp"

namespace sodsim {

struct RoleFlags {
  bool core = false;
  bool extended = false;
  bool master = false;
  bool cluster_head = false;
};

struct DroneState {
  EntityId id;
  std::string organisation;
  Vec3 position;
  Vec3 velocity;
  Vec3 home;
  double max_speed_mps = 10.0;
  EnergyState energy;
  double compute_capacity = 1.0;  // work-units per tick
  double health = 1.0;
  std::set<std::string> sensors;
  double sensor_range_m = 50.0;
  PolicySet policy;
  RoleFlags roles;
  bool severe_power = false;
  bool grounded = false;

  bool valid() const {
    return health >= 0.0 && health <= 1.0 && compute_capacity >= 0.0 &&
           !(roles.master && roles.cluster_head);
  }

  bool airborne() const { return !grounded && energy.remaining_j > 0.0; }
};

struct Obstacle {
  std::string id;
  Vec3 position;
  double radius_m = 1.0;
  EntityId first_detected_by;
  Tick detection_tick = 0;
};

struct FlightOutcome {
  bool arrived = false;
  bool depleted = false;
  double distance_moved_m = 0.0;
};

// Point-mass kinematics: move toward the waypoint at min(max speed, required
// speed); arrival within half a tick's travel snaps to the waypoint exactly.
inline FlightOutcome step_flight(DroneState& drone, Vec3 waypoint, Tick dt,
                                 const EnergyCoefficients& coeffs, double tick_seconds) {
  FlightOutcome out;
  if (!drone.airborne() || dt < 1) {
    out.depleted = !drone.airborne();
    return out;
  }
  double dt_s = static_cast<double>(dt) * tick_seconds;
  Vec3 to_wp = waypoint - drone.position;
  double dist = to_wp.norm();
  double required = dist / dt_s;
  double speed = std::min(drone.max_speed_mps, required);
  double travel = speed * dt_s;

  auto hover = consume(drone.energy, coeffs, Activity::Hover, static_cast<double>(dt), tick_seconds);
  auto cruise = consume(drone.energy, coeffs, Activity::Cruise,
                        speed * static_cast<double>(dt), tick_seconds);
  if (hover.depleted || cruise.depleted) {
    drone.grounded = true;
    drone.health = 0.0;
    drone.velocity = {};
    out.depleted = true;
    return out;
  }

  if (dist <= travel + 0.5 * drone.max_speed_mps * tick_seconds) {
    drone.position = waypoint;
    drone.velocity = {};
    out.arrived = true;
    out.distance_moved_m = dist;
  } else {
    Vec3 dir = to_wp.normalized();
    drone.position = drone.position + dir * travel;
    drone.velocity = dir * speed;
    out.distance_moved_m = travel;
  }
  return out;
}

struct PowerReport {
  EntityId drone_id;
  double remaining_ratio = 0.0;
  double compute_headroom = 0.0;
  double health = 0.0;
  bool severe = false;
};

inline double energy_to_home_estimate(const DroneState& drone, const EnergyCoefficients& coeffs) {
  double dist = distance(drone.position, drone.home);
  if (drone.max_speed_mps <= 0.0) return dist > 0.0 ? drone.energy.capacity_j : 0.0;
  double seconds = dist / drone.max_speed_mps;
  return (coeffs.p_hover_w + coeffs.p_cruise_w_per_mps * drone.max_speed_mps) * seconds;
}

// SEVERE when the energy left above the critical reserve no longer covers the
// estimated flight home.
inline PowerReport make_power_report(const DroneState& drone, const EnergyCoefficients& coeffs) {
  PowerReport r;
  r.drone_id = drone.id;
  r.remaining_ratio =
      drone.energy.capacity_j > 0.0 ? drone.energy.remaining_j / drone.energy.capacity_j : 0.0;
  r.compute_headroom = drone.compute_capacity;
  r.health = drone.health;
  r.severe = drone.energy.remaining_j - drone.energy.critical_reserve_j <
             energy_to_home_estimate(drone, coeffs);
  return r;
}

struct Obligation {
  std::string task_id;
  double remaining_work = 0.0;
  Tick deadline = 0;
};

struct ServiceStatus {
  bool ok = true;
  std::vector<std::string> lagging_tasks;
};

// Each obligation is projected independently at the drone's current headroom.
inline ServiceStatus service_level_check(const DroneState& drone,
                                         const std::vector<Obligation>& obligations, Tick now) {
  ServiceStatus status;
  for (const auto& ob : obligations) {
    if (ob.remaining_work <= 0.0) continue;
    double ticks_left = static_cast<double>(ob.deadline - now);
    double achievable = drone.compute_capacity * std::max(0.0, ticks_left);
    if (achievable < ob.remaining_work) {
      status.ok = false;
      status.lagging_tasks.push_back(ob.task_id);
    }
  }
  return status;
}

struct Maneuver {
  Vec3 waypoint;
  std::string obstacle_id;
  bool locally_detected = false;  // false when acting on a peer broadcast
};

namespace drone_detail {

inline Vec3 lateral_axis(Vec3 dir) {
  // Horizontal perpendicular; vertical headings fall back to the x axis.
  Vec3 up{0.0, 0.0, 1.0};
  Vec3 lat{dir.y * up.z - dir.z * up.y, dir.z * up.x - dir.x * up.z,
           dir.x * up.y - dir.y * up.x};
  if (lat.norm() < 1e-12) return {1.0, 0.0, 0.0};
  return lat.normalized();
}

inline Vec3 positive_side(Vec3 axis) {
  if (axis.x != 0.0) return axis.x > 0.0 ? axis : axis * -1.0;
  if (axis.y != 0.0) return axis.y > 0.0 ? axis : axis * -1.0;
  return axis.z >= 0.0 ? axis : axis * -1.0;
}

}  // namespace drone_detail

// Threat test: obstacle ahead of the velocity ray with lateral clearance under
// radius + margin. The offset waypoint sits abeam the obstacle on the side
// needing the least deviation; exact ties go to the positive-x side.
inline std::optional<Maneuver> plan_avoidance(const DroneState& drone, const Obstacle& obstacle,
                                              double safety_margin_m, bool locally_detected) {
  Vec3 dir = drone.velocity.normalized();
  if (dir.norm() < 1e-12) return std::nullopt;
  if (locally_detected &&
      distance(drone.position, obstacle.position) > drone.sensor_range_m) {
    return std::nullopt;
  }
  Vec3 rel = obstacle.position - drone.position;
  double proj = rel.dot(dir);
  if (proj <= 0.0) return std::nullopt;
  Vec3 perp = rel - dir * proj;
  double clearance = obstacle.radius_m + safety_margin_m;
  if (perp.norm() >= clearance) return std::nullopt;

  Vec3 lateral;
  if (perp.norm() > 1e-9) {
    lateral = (perp * -1.0).normalized();
  } else {
    lateral = drone_detail::positive_side(drone_detail::lateral_axis(dir));
  }
  Maneuver m;
  m.waypoint = drone.position + dir * proj + lateral * clearance;
  m.obstacle_id = obstacle.id;
  m.locally_detected = locally_detected;
  return m;
}

enum class PreservationVerdict { Continue, Disengage, Sacrifice };

inline const char* to_string(PreservationVerdict v) {
  switch (v) {
    case PreservationVerdict::Continue: return "continue";
    case PreservationVerdict::Disengage: return "disengage";
    case PreservationVerdict::Sacrifice: return "sacrifice";
  }
  return "unknown";
}

struct SelfPreservationOutcome {
  PreservationVerdict verdict = PreservationVerdict::Continue;
  std::string reason;
};

struct PreservationThresholds {
  double theta_disengage = 0.3;
  double theta_sacrifice = 0.8;
};

enum class AssessmentRecommendation { Continue, Abort, Altruistic };

struct MissionAssessment {
  double success_probability = 1.0;
  AssessmentRecommendation recommendation = AssessmentRecommendation::Continue;
  std::vector<EntityId> sacrifice_set;  // non-empty iff Altruistic
};

// Pure rule table: sacrifice when named in an altruistic assessment on a
// critical mission; disengage on low health or severe power when the mission
// is not critical; otherwise continue.
inline SelfPreservationOutcome evaluate_self_preservation(const DroneState& drone,
                                                          double criticality,
                                                          const MissionAssessment& assessment,
                                                          const PreservationThresholds& thresholds) {
  bool in_sacrifice_set =
      std::find(assessment.sacrifice_set.begin(), assessment.sacrifice_set.end(), drone.id) !=
      assessment.sacrifice_set.end();
  if (assessment.recommendation == AssessmentRecommendation::Altruistic && in_sacrifice_set &&
      criticality >= thresholds.theta_sacrifice) {
    return {PreservationVerdict::Sacrifice, "altruistic-sacrifice"};
  }
  bool degraded = drone.health < thresholds.theta_disengage || drone.severe_power;
  if (degraded && criticality < thresholds.theta_sacrifice) {
    return {PreservationVerdict::Disengage,
            drone.health < thresholds.theta_disengage ? "low-health" : "severe-power"};
  }
  return {PreservationVerdict::Continue, "nominal"};
}

struct Action {
  std::string kind;  // "waypoint", or an interval rule key
  Vec3 position;
  double magnitude = 0.0;
};

struct PolicyAllowed {};
struct PolicyViolation {
  std::string rule_id;
};
struct PolicyEscalation {
  std::string action_kind;
};
using PolicyCheckResult = std::variant<PolicyAllowed, PolicyViolation, PolicyEscalation>;

// Unknown action kinds escalate to the swarm layer, never silently pass.
inline PolicyCheckResult local_policy_check(const DroneState& drone, const Action& action) {
  if (action.kind == "waypoint") {
    std::string violated;
    if (!drone.policy.position_allowed(action.position, &violated)) {
      return PolicyViolation{violated};
    }
    return PolicyAllowed{};
  }
  if (auto it = drone.policy.intervals.find(action.kind); it != drone.policy.intervals.end()) {
    if (!it->second.contains(action.magnitude)) return PolicyViolation{action.kind};
    return PolicyAllowed{};
  }
  return PolicyEscalation{action.kind};
}

}  // namespace sodsim
