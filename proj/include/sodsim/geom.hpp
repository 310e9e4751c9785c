#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace sodsim {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a * s; }
  friend constexpr bool operator==(Vec3 a, Vec3 b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

  constexpr double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    double n = norm();
    return n > 0.0 ? Vec3{x / n, y / n, z / n} : Vec3{};
  }
};

inline double distance(Vec3 a, Vec3 b) { return (a - b).norm(); }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend constexpr bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

// Closed 2D polygon; vertices in order, implicit closing edge last->first.
struct Polygon {
  std::vector<Vec2> vertices;

  bool valid() const { return vertices.size() >= 3; }
  friend bool operator==(const Polygon&, const Polygon&) = default;
};

namespace geom_detail {

inline double cross2(Vec2 o, Vec2 a, Vec2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline bool on_segment(Vec2 p, Vec2 a, Vec2 b, double eps = 1e-9) {
  double c = cross2(a, b, p);
  if (std::abs(c) > eps * (1.0 + std::abs(b.x - a.x) + std::abs(b.y - a.y))) return false;
  return p.x >= std::min(a.x, b.x) - eps && p.x <= std::max(a.x, b.x) + eps &&
         p.y >= std::min(a.y, b.y) - eps && p.y <= std::max(a.y, b.y) + eps;
}

}  // namespace geom_detail

// Boundary counts as inside.
inline bool point_in_polygon(Vec2 p, const Polygon& poly) {
  if (!poly.valid()) return false;
  const auto& v = poly.vertices;
  size_t n = v.size();
  for (size_t i = 0; i < n; ++i) {
    if (geom_detail::on_segment(p, v[i], v[(i + 1) % n])) return true;
  }
  bool inside = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    bool intersects = ((v[i].y > p.y) != (v[j].y > p.y)) &&
                      (p.x < (v[j].x - v[i].x) * (p.y - v[i].y) / (v[j].y - v[i].y) + v[i].x);
    if (intersects) inside = !inside;
  }
  return inside;
}

// Proper or touching intersection of segments ab and cd.
inline bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  using geom_detail::cross2;
  using geom_detail::on_segment;
  double d1 = cross2(c, d, a);
  double d2 = cross2(c, d, b);
  double d3 = cross2(a, b, c);
  double d4 = cross2(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  return on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) || on_segment(d, a, b);
}

// A segment "enters" the polygon if any point of it lies inside (boundary included).
inline bool segment_intersects_polygon(Vec2 a, Vec2 b, const Polygon& poly) {
  if (!poly.valid()) return false;
  if (point_in_polygon(a, poly) || point_in_polygon(b, poly)) return true;
  const auto& v = poly.vertices;
  size_t n = v.size();
  for (size_t i = 0; i < n; ++i) {
    if (segments_intersect(a, b, v[i], v[(i + 1) % n])) return true;
  }
  return false;
}

inline Vec2 segment_intersection_point(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  double a1 = b.y - a.y, b1 = a.x - b.x, c1 = a1 * a.x + b1 * a.y;
  double a2 = d.y - c.y, b2 = c.x - d.x, c2 = a2 * c.x + b2 * c.y;
  double det = a1 * b2 - a2 * b1;
  if (det == 0.0) return a;
  return {(b2 * c1 - b1 * c2) / det, (a1 * c2 - a2 * c1) / det};
}

inline double point_segment_distance(Vec3 p, Vec3 a, Vec3 b) {
  Vec3 ab = b - a;
  double len2 = ab.dot(ab);
  if (len2 == 0.0) return distance(p, a);
  double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

// Minimum distance between segments p1p2 and q1q2 in 3D.
inline double segment_segment_distance(Vec3 p1, Vec3 p2, Vec3 q1, Vec3 q2) {
  Vec3 d1 = p2 - p1;
  Vec3 d2 = q2 - q1;
  Vec3 r = p1 - q1;
  double a = d1.dot(d1), e = d2.dot(d2), f = d2.dot(r);
  double s = 0.0, t = 0.0;
  constexpr double kEps = 1e-12;
  if (a <= kEps && e <= kEps) return distance(p1, q1);
  if (a <= kEps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    double c = d1.dot(r);
    if (e <= kEps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      double b = d1.dot(d2);
      double denom = a * e - b * b;
      s = denom > kEps ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return distance(p1 + d1 * s, q1 + d2 * t);
}

}  // namespace sodsim
