#pragma once
/**
 * @file cover.hpp
 * @brief Sensitive nodes and covers: the only part of an object a mover sees.
 *
 * A cover is an ordered list of nodes. The hit scan walks the nodes in
 * ordinal order: transparent nodes are looked through, the first moveable or
 * frozen node is caught, and the first nonmoveable node blocks the scan.
 */

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "movekit/geometry.hpp"

namespace movekit {

enum class NodeBehaviour { Moveable, Frozen, Transparent, Nonmoveable };

enum class CursorHint { Default, Hand, SizeAll, SizeNS, SizeWE, SizeNWSE, SizeNESW };

enum class ShapeKind { Circle, Strip, Polygon };

inline const char* to_string(CursorHint c) {
  switch (c) {
    case CursorHint::Default: return "Default";
    case CursorHint::Hand: return "Hand";
    case CursorHint::SizeAll: return "SizeAll";
    case CursorHint::SizeNS: return "SizeNS";
    case CursorHint::SizeWE: return "SizeWE";
    case CursorHint::SizeNWSE: return "SizeNWSE";
    case CursorHint::SizeNESW: return "SizeNESW";
  }
  return "Default";
}

inline const char* to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::Circle: return "circle";
    case ShapeKind::Strip: return "strip";
    case ShapeKind::Polygon: return "polygon";
  }
  return "circle";
}

struct Color {
  std::uint8_t r{0};
  std::uint8_t g{0};
  std::uint8_t b{0};

  static constexpr Color red() { return {255, 0, 0}; }
  static constexpr Color white() { return {255, 255, 255}; }
  static constexpr Color black() { return {0, 0, 0}; }

  std::string hex() const {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02X%02X%02X", r, g, b);
    return buf;
  }
  constexpr bool operator==(const Color&) const = default;
};

struct CircleShape {
  Point2 center;
  double radius;
};

struct StripShape {
  Segment segment;
  double radius;
};

struct PolygonShape {
  std::vector<Point2> vertices;
};

using NodeShape = std::variant<CircleShape, StripShape, PolygonShape>;

inline constexpr double kMinNodeRadius = 1.0;
// Half-width of the strip nodes used on borders and lines.
inline constexpr double kStripHalfWidth = 3.0;

class CoverNode {
 public:
  static CoverNode circle(Point2 center, double radius, CursorHint cursor = CursorHint::Hand,
                          NodeBehaviour behaviour = NodeBehaviour::Moveable) {
    return CoverNode(CircleShape{center, radius}, behaviour, cursor);
  }
  static CoverNode strip(Point2 a, Point2 b, double radius = kStripHalfWidth,
                         CursorHint cursor = CursorHint::Hand,
                         NodeBehaviour behaviour = NodeBehaviour::Moveable) {
    return CoverNode(StripShape{{a, b}, radius}, behaviour, cursor);
  }
  static CoverNode polygon(std::vector<Point2> vertices, CursorHint cursor = CursorHint::SizeAll,
                           NodeBehaviour behaviour = NodeBehaviour::Moveable) {
    return CoverNode(PolygonShape{std::move(vertices)}, behaviour, cursor);
  }
  static CoverNode rect(const Rect& r, CursorHint cursor = CursorHint::SizeAll,
                        NodeBehaviour behaviour = NodeBehaviour::Moveable) {
    const auto c = r.corners();
    return polygon({c.begin(), c.end()}, cursor, behaviour);
  }

  int ordinal() const { return ordinal_; }
  const NodeShape& shape() const { return shape_; }
  ShapeKind shape_kind() const { return static_cast<ShapeKind>(shape_.index()); }
  NodeBehaviour behaviour() const { return behaviour_; }
  CursorHint cursor() const { return cursor_; }
  bool clearance() const { return clearance_; }
  Color fill_color() const { return fill_color_; }

  void set_behaviour(NodeBehaviour b) { behaviour_ = b; }
  void set_cursor(CursorHint c) { cursor_ = c; }
  void set_clearance(bool flag) { clearance_ = flag; }
  void set_fill_color(Color c) { fill_color_ = c; }

 private:
  friend class Cover;

  CoverNode(NodeShape shape, NodeBehaviour behaviour, CursorHint cursor)
      : shape_(std::move(shape)), behaviour_(behaviour), cursor_(cursor) {
    clearance_ = shape_kind() != ShapeKind::Polygon;
    validate();
  }

  void validate() const {
    if (const auto* c = std::get_if<CircleShape>(&shape_)) {
      if (!(c->radius >= kMinNodeRadius))
        throw Error(ErrorCode::InvalidNode, "circle node radius below 1 px");
    } else if (const auto* s = std::get_if<StripShape>(&shape_)) {
      if (!(s->radius >= kMinNodeRadius))
        throw Error(ErrorCode::InvalidNode, "strip node radius below 1 px");
    } else {
      const auto& p = std::get<PolygonShape>(shape_);
      if (p.vertices.size() < 3) throw Error(ErrorCode::InvalidNode, "polygon node needs 3 vertices");
    }
  }

  int ordinal_{0};
  NodeShape shape_;
  NodeBehaviour behaviour_;
  CursorHint cursor_;
  bool clearance_{true};
  Color fill_color_{Color::white()};
};

inline bool node_contains(const CoverNode& n, Point2 p) {
  return std::visit(
      [&](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, CircleShape>) {
          return in_circle(p, s.center, s.radius);
        } else if constexpr (std::is_same_v<S, StripShape>) {
          return in_capsule(p, s.segment, s.radius);
        } else {
          return in_convex_polygon(p, s.vertices);
        }
      },
      n.shape());
}

class Cover {
 public:
  explicit Cover(std::vector<CoverNode> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw Error(ErrorCode::InvalidNode, "a cover needs at least one node");
    for (std::size_t i = 0; i < nodes_.size(); ++i) nodes_[i].ordinal_ = static_cast<int>(i);
  }

  std::size_t size() const { return nodes_.size(); }
  const CoverNode& operator[](std::size_t i) const { return nodes_[i]; }
  CoverNode& node(std::size_t i) { return nodes_.at(i); }
  const std::vector<CoverNode>& nodes() const { return nodes_; }
  auto begin() const { return nodes_.begin(); }
  auto end() const { return nodes_.end(); }

 private:
  std::vector<CoverNode> nodes_;
};

struct HitInfo {
  int node_ordinal{0};
  ShapeKind shape_kind{ShapeKind::Circle};
  NodeBehaviour behaviour{NodeBehaviour::Moveable};
  CursorHint cursor{CursorHint::Default};
};

enum class HitOutcome { Miss, Hit, Blocked };

struct CoverHit {
  HitOutcome outcome{HitOutcome::Miss};
  HitInfo info;  // meaningful unless outcome == Miss
};

inline CoverHit cover_hit(const Cover& c, Point2 p) {
  for (const auto& n : c) {
    if (!node_contains(n, p)) continue;
    // a transparent node hides the rest of this cover; deeper objects still see p
    if (n.behaviour() == NodeBehaviour::Transparent) return {};
    const HitInfo info{n.ordinal(), n.shape_kind(), n.behaviour(), n.cursor()};
    if (n.behaviour() == NodeBehaviour::Nonmoveable) return {HitOutcome::Blocked, info};
    return {HitOutcome::Hit, info};
  }
  return {};
}

inline Cover set_clearance(Cover c, bool flag, std::optional<ShapeKind> filter = std::nullopt) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto& n = c.node(i);
    if (!filter || n.shape_kind() == *filter) n.set_clearance(flag);
  }
  return c;
}

inline Cover set_node_behaviour_cursor(Cover c, std::size_t ordinal, NodeBehaviour b,
                                       CursorHint cur) {
  if (ordinal >= c.size()) throw Error(ErrorCode::BadOrdinal, "node ordinal out of range");
  c.node(ordinal).set_behaviour(b);
  c.node(ordinal).set_cursor(cur);
  return c;
}

}  // namespace movekit
