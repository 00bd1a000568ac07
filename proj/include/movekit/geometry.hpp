#pragma once
/**
 * @file geometry.hpp
 * @brief Planar primitives shared by covers, shapes and charts.
 *
 * Screen coordinates: x grows right, y grows down. Angles are mathematical
 * (counterclockwise positive) with the screen y axis negated, so an angle of
 * pi/2 points up the screen.
 *
 * All containment tests are boundary inclusive.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "movekit/error.hpp"

namespace movekit {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point2 {
  double x{0.0};
  double y{0.0};

  constexpr Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
  constexpr Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  constexpr Point2 operator*(double k) const { return {x * k, y * k}; }
  constexpr bool operator==(const Point2&) const = default;
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Segment {
  Point2 a;
  Point2 b;
};

/// Axis-aligned rectangle in screen pixels.
struct Rect {
  double left{0.0};
  double top{0.0};
  double width{0.0};
  double height{0.0};

  static constexpr Rect from_ltrb(double l, double t, double r, double b) {
    return {l, t, r - l, b - t};
  }
  static Rect spanning(Point2 a, Point2 b) {
    return from_ltrb(std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x),
                     std::max(a.y, b.y));
  }

  constexpr double right() const { return left + width; }
  constexpr double bottom() const { return top + height; }
  constexpr Point2 top_left() const { return {left, top}; }
  constexpr Point2 top_right() const { return {right(), top}; }
  constexpr Point2 bottom_right() const { return {right(), bottom()}; }
  constexpr Point2 bottom_left() const { return {left, bottom()}; }
  constexpr Point2 center() const { return {left + width / 2.0, top + height / 2.0}; }

  constexpr bool contains(Point2 p) const {
    return left <= p.x && p.x <= right() && top <= p.y && p.y <= bottom();
  }
  constexpr bool contains(const Rect& r) const {
    return left <= r.left && r.right() <= right() && top <= r.top && r.bottom() <= bottom();
  }
  constexpr Rect translated(double dx, double dy) const { return {left + dx, top + dy, width, height}; }
  constexpr Rect inflated(double d) const {
    return {left - d, top - d, width + 2.0 * d, height + 2.0 * d};
  }
  constexpr Point2 clamp(Point2 p) const {
    return {std::clamp(p.x, left, right()), std::clamp(p.y, top, bottom())};
  }
  std::array<Point2, 4> corners() const {
    return {top_left(), top_right(), bottom_right(), bottom_left()};
  }
  constexpr bool operator==(const Rect&) const = default;
};

inline Rect bounding_union(const Rect& a, const Rect& b) {
  return Rect::from_ltrb(std::min(a.left, b.left), std::min(a.top, b.top),
                         std::max(a.right(), b.right()), std::max(a.bottom(), b.bottom()));
}

inline Rect bounding_box(std::span<const Point2> pts) {
  if (pts.empty()) return {};
  double l = pts[0].x, r = pts[0].x, t = pts[0].y, b = pts[0].y;
  for (const auto& p : pts) {
    l = std::min(l, p.x);
    r = std::max(r, p.x);
    t = std::min(t, p.y);
    b = std::max(b, p.y);
  }
  return Rect::from_ltrb(l, t, r, b);
}

struct SegmentDistance {
  double distance;
  Point2 foot;
};

/// Nearest point of the segment to p; a degenerate segment acts as a point.
inline SegmentDistance distance_to_segment(Point2 p, const Segment& s) {
  const double vx = s.b.x - s.a.x;
  const double vy = s.b.y - s.a.y;
  const double len2 = vx * vx + vy * vy;
  if (len2 == 0.0) return {distance(p, s.a), s.a};
  double t = ((p.x - s.a.x) * vx + (p.y - s.a.y) * vy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  const Point2 foot{s.a.x + t * vx, s.a.y + t * vy};
  return {distance(p, foot), foot};
}

inline bool in_circle(Point2 p, Point2 center, double r) {
  const double dx = p.x - center.x;
  const double dy = p.y - center.y;
  return dx * dx + dy * dy <= r * r;
}

inline bool in_capsule(Point2 p, const Segment& s, double r) {
  return distance_to_segment(p, s).distance <= r;
}

/// Convex polygon of either winding, boundary inclusive.
inline bool in_convex_polygon(Point2 p, std::span<const Point2> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) return false;
  bool has_pos = false;
  bool has_neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = vertices[i];
    const Point2& b = vertices[(i + 1) % n];
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross > 0.0) has_pos = true;
    if (cross < 0.0) has_neg = true;
    if (has_pos && has_neg) return false;
  }
  return true;
}

/// True when the vertices form a convex polygon with non-zero area.
inline bool is_convex(std::span<const Point2> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) return false;
  bool has_pos = false;
  bool has_neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = vertices[i];
    const Point2& b = vertices[(i + 1) % n];
    const Point2& c = vertices[(i + 2) % n];
    const double cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
    if (cross > 0.0) has_pos = true;
    if (cross < 0.0) has_neg = true;
  }
  return has_pos != has_neg;
}

inline Point2 point_on_ray(Point2 center, double angle, double dist) {
  return {center.x + dist * std::cos(angle), center.y - dist * std::sin(angle)};
}

/// Angle in (-pi, pi] of the ray from center through p.
inline double ray_angle(Point2 center, Point2 p) {
  if (p == center) throw Error(ErrorCode::DegenerateRay, "ray through its own origin");
  double a = -std::atan2(p.y - center.y, p.x - center.x);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

/// Reduces an angle to [0, 2pi).
inline double normalize_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

/// Reduces an angle to (-pi, pi].
inline double normalize_signed_angle(double a) {
  a = normalize_angle(a);
  if (a > kPi) a -= kTwoPi;
  return a;
}

/// Affine map between a coordinate interval [c0, c1] and a value interval [v0, v1].
struct LinearMap {
  double c0{0.0};
  double c1{1.0};
  double v0{0.0};
  double v1{1.0};
};

inline double map_value(const LinearMap& m, double v) {
  if (m.v1 == m.v0) return m.c0;
  return m.c0 + (v - m.v0) * (m.c1 - m.c0) / (m.v1 - m.v0);
}

inline double unmap(const LinearMap& m, double c) {
  if (m.c1 == m.c0) throw Error(ErrorCode::DegenerateMap, "coordinate interval has zero length");
  return m.v0 + (c - m.c0) * (m.v1 - m.v0) / (m.c1 - m.c0);
}

// The nine marks of a text rectangle, row-major before rotation.
enum class AnchorMark {
  TopLeft, TopCenter, TopRight,
  MiddleLeft, Center, MiddleRight,
  BottomLeft, BottomCenter, BottomRight,
};

inline constexpr int kAnchorMarkCount = 9;

struct TextBox {
  double width{0.0};
  double height{0.0};
  double angle{0.0};
  Point2 anchor;
  AnchorMark anchor_basis{AnchorMark::Center};
};

/// Rotates a screen-space offset counterclockwise (as seen on screen) by angle.
inline Point2 rotate_offset(Point2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {v.x * c + v.y * s, -v.x * s + v.y * c};
}

/// The nine marks of the rotated text rectangle, row-major over
/// (top, middle, bottom) x (left, center, right) in the unrotated frame.
inline std::array<Point2, 9> text_basis_points(const TextBox& t) {
  const int basis = static_cast<int>(t.anchor_basis);
  const double ax = (basis % 3) * 0.5 * t.width;
  const double ay = (basis / 3) * 0.5 * t.height;
  std::array<Point2, 9> out{};
  for (int i = 0; i < 9; ++i) {
    const Point2 local{(i % 3) * 0.5 * t.width - ax, (i / 3) * 0.5 * t.height - ay};
    out[static_cast<std::size_t>(i)] = t.anchor + rotate_offset(local, t.angle);
  }
  return out;
}

/// Corners of the rotated text rectangle in drawing order TL, TR, BR, BL.
inline std::array<Point2, 4> text_corners(const TextBox& t) {
  const auto m = text_basis_points(t);
  return {m[0], m[2], m[8], m[6]};
}

}  // namespace movekit
