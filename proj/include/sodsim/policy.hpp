#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sodsim/geom.hpp"

namespace sodsim {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool valid() const { return lo <= hi; }
  std::optional<Interval> intersect(Interval o) const {
    Interval r{std::max(lo, o.lo), std::min(hi, o.hi)};
    if (!r.valid()) return std::nullopt;
    return r;
  }
  bool contains(double v) const { return v >= lo && v <= hi; }
  friend bool operator==(Interval, Interval) = default;
};

// One allowed group is a union of polygons; a position must fall inside the
// union of every group. Merging policies ANDs groups together, which keeps the
// merged set at least as restrictive as both inputs without polygon clipping.
using AllowedGroup = std::vector<Polygon>;

struct PolicySet {
  std::map<std::string, Interval> intervals;
  std::vector<AllowedGroup> allowed_groups;
  std::vector<Polygon> forbidden;

  friend bool operator==(const PolicySet&, const PolicySet&) = default;

  bool inside_group(Vec2 p, const AllowedGroup& g) const {
    for (const auto& poly : g) {
      if (point_in_polygon(p, poly)) return true;
    }
    return false;
  }

  // Checks altitude interval and region rules; fills the violated rule id.
  bool position_allowed(Vec3 p, std::string* violated = nullptr) const {
    if (auto it = intervals.find("altitude"); it != intervals.end()) {
      if (!it->second.contains(p.z)) {
        if (violated) *violated = "altitude";
        return false;
      }
    }
    Vec2 p2{p.x, p.y};
    for (const auto& g : allowed_groups) {
      if (!inside_group(p2, g)) {
        if (violated) *violated = "geofence";
        return false;
      }
    }
    for (const auto& poly : forbidden) {
      if (point_in_polygon(p2, poly)) {
        if (violated) *violated = "geofence";
        return false;
      }
    }
    return true;
  }
};

struct HarmoniseResult {
  bool compatible = false;
  PolicySet merged;                    // most restrictive combination
  std::vector<std::string> conflicts;  // rule ids with empty intersection
};

namespace policy_detail {

// Non-emptiness of the intersection of all allowed groups (each a polygon
// union). For closed regions any non-empty intersection contains a polygon
// vertex or an edge-edge crossing, so testing those candidates is exact.
inline bool groups_feasible(const std::vector<AllowedGroup>& groups) {
  if (groups.size() <= 1) return true;
  std::vector<Vec2> candidates;
  std::vector<const Polygon*> polys;
  for (const auto& g : groups) {
    for (const auto& p : g) polys.push_back(&p);
  }
  for (const auto* p : polys) {
    for (auto v : p->vertices) candidates.push_back(v);
  }
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto& vi = polys[i]->vertices;
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      const auto& vj = polys[j]->vertices;
      for (std::size_t a = 0; a < vi.size(); ++a) {
        Vec2 a1 = vi[a], a2 = vi[(a + 1) % vi.size()];
        for (std::size_t b = 0; b < vj.size(); ++b) {
          Vec2 b1 = vj[b], b2 = vj[(b + 1) % vj.size()];
          if (segments_intersect(a1, a2, b1, b2)) {
            candidates.push_back(segment_intersection_point(a1, a2, b1, b2));
          }
        }
      }
    }
  }
  for (auto c : candidates) {
    bool in_all = true;
    for (const auto& g : groups) {
      bool in_union = false;
      for (const auto& poly : g) {
        if (point_in_polygon(c, poly)) {
          in_union = true;
          break;
        }
      }
      if (!in_union) {
        in_all = false;
        break;
      }
    }
    if (in_all) return true;
  }
  return false;
}

template <typename T>
void append_unique(std::vector<T>& dst, const std::vector<T>& src) {
  for (const auto& item : src) {
    if (std::find(dst.begin(), dst.end(), item) == dst.end()) dst.push_back(item);
  }
}

}  // namespace policy_detail

// Per shared key, interval constraints intersect; allowed regions intersect
// (group AND); forbidden regions union. Keys on one side only carry over.
inline HarmoniseResult harmonise_policy(const PolicySet& candidate, const PolicySet& baseline) {
  HarmoniseResult result;
  for (const auto& [key, iv] : candidate.intervals) {
    auto it = baseline.intervals.find(key);
    if (it == baseline.intervals.end()) {
      result.merged.intervals[key] = iv;
      continue;
    }
    if (auto merged = iv.intersect(it->second)) {
      result.merged.intervals[key] = *merged;
    } else {
      result.conflicts.push_back(key);
    }
  }
  for (const auto& [key, iv] : baseline.intervals) {
    if (!candidate.intervals.contains(key)) result.merged.intervals[key] = iv;
  }

  result.merged.allowed_groups = candidate.allowed_groups;
  policy_detail::append_unique(result.merged.allowed_groups, baseline.allowed_groups);
  result.merged.forbidden = candidate.forbidden;
  policy_detail::append_unique(result.merged.forbidden, baseline.forbidden);

  if (!policy_detail::groups_feasible(result.merged.allowed_groups)) {
    result.conflicts.push_back("geofence");
  }

  result.compatible = result.conflicts.empty();
  return result;
}

}  // namespace sodsim
