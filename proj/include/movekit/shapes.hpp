#pragma once
/**
 * @file shapes.hpp
 * @brief Primitive movable objects and the covers that make them movable.
 *
 * Each shape exists twice: as a plain value (ResizableRect, CircleNR, ...)
 * with free functions for its cover and node movement, and as a SceneObject
 * wrapper that a mover can hold. Composite objects reuse the values.
 */

#include <array>
#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "movekit/object.hpp"

namespace movekit {

// Corner node radius of resizable rectangles.
inline constexpr double kCornerRadius = 6.0;
// Small nodes of N-node covers and the distance between their centers.
inline constexpr double kBorderNodeRadius = 5.0;
inline constexpr double kBorderNodeSpacing = 8.0;

/// Number of border nodes for a circle of radius r (round half to even).
inline int perimeter_node_count(double r, double spacing = kBorderNodeSpacing) {
  return std::max(1, static_cast<int>(std::nearbyint(kTwoPi * r / spacing)));
}

// ---------------------------------------------------------------------------
// Resizable rectangle

struct SizeLimits {
  double min_width{16.0};
  double min_height{16.0};
  double max_width{1.0e6};
  double max_height{1.0e6};
};

struct ResizableRect {
  Rect rect;
  SizeLimits limits;
};

namespace rect_node {
inline constexpr int kTopLeft = 0, kTopRight = 1, kBottomRight = 2, kBottomLeft = 3;
inline constexpr int kLeft = 4, kRight = 5, kTop = 6, kBottom = 7, kBody = 8;
}  // namespace rect_node

/// Four corner circles, four side strips, then the whole-area polygon.
inline Cover rect_cover(const ResizableRect& r, bool movable = true) {
  const Rect& rc = r.rect;
  std::vector<CoverNode> nodes{
      CoverNode::circle(rc.top_left(), kCornerRadius, CursorHint::SizeNWSE),
      CoverNode::circle(rc.top_right(), kCornerRadius, CursorHint::SizeNESW),
      CoverNode::circle(rc.bottom_right(), kCornerRadius, CursorHint::SizeNWSE),
      CoverNode::circle(rc.bottom_left(), kCornerRadius, CursorHint::SizeNESW),
      CoverNode::strip(rc.top_left(), rc.bottom_left(), kStripHalfWidth, CursorHint::SizeWE),
      CoverNode::strip(rc.top_right(), rc.bottom_right(), kStripHalfWidth, CursorHint::SizeWE),
      CoverNode::strip(rc.top_left(), rc.top_right(), kStripHalfWidth, CursorHint::SizeNS),
      CoverNode::strip(rc.bottom_left(), rc.bottom_right(), kStripHalfWidth, CursorHint::SizeNS),
      CoverNode::rect(rc, CursorHint::SizeAll),
  };
  if (!movable)
    for (auto& n : nodes) n.set_behaviour(NodeBehaviour::Frozen);
  return Cover(std::move(nodes));
}

/// Side nodes change one dimension, corners change both; an axis is accepted
/// only while its dimension stays within the limits. The body node translates.
inline bool rect_move_node(ResizableRect& r, int node, double dx, double dy) {
  Rect& rc = r.rect;
  const SizeLimits& lim = r.limits;
  auto width_ok = [&](double w) { return lim.min_width <= w && w <= lim.max_width; };
  auto height_ok = [&](double h) { return lim.min_height <= h && h <= lim.max_height; };
  auto left = [&] {
    if (!width_ok(rc.width - dx)) return false;
    rc.left += dx;
    rc.width -= dx;
    return true;
  };
  auto right = [&] {
    if (!width_ok(rc.width + dx)) return false;
    rc.width += dx;
    return true;
  };
  auto top = [&] {
    if (!height_ok(rc.height - dy)) return false;
    rc.top += dy;
    rc.height -= dy;
    return true;
  };
  auto bottom = [&] {
    if (!height_ok(rc.height + dy)) return false;
    rc.height += dy;
    return true;
  };
  using namespace rect_node;
  switch (node) {
    case kTopLeft: { const bool a = left(); const bool b = top(); return a || b; }
    case kTopRight: { const bool a = right(); const bool b = top(); return a || b; }
    case kBottomRight: { const bool a = right(); const bool b = bottom(); return a || b; }
    case kBottomLeft: { const bool a = left(); const bool b = bottom(); return a || b; }
    case kLeft: return left();
    case kRight: return right();
    case kTop: return top();
    case kBottom: return bottom();
    case kBody:
      rc = rc.translated(dx, dy);
      return true;
    default: return false;
  }
}

class RectObject : public SceneObject {
 public:
  explicit RectObject(ResizableRect r) : r_(r) {}
  static std::unique_ptr<RectObject> load(const Record& rec) {
    auto o = std::make_unique<RectObject>(
        ResizableRect{rec.rect("rect"), {rec.real("minw"), rec.real("minh"), rec.real("maxw"), rec.real("maxh")}});
    o->load_common(rec, "");
    return o;
  }

  const ResizableRect& shape() const { return r_; }
  ResizableRect& shape() { return r_; }

  std::string_view type_tag() const override { return "rect"; }
  Cover define_cover() const override { return rect_cover(r_, movable()); }
  void move(double dx, double dy) override { r_.rect = r_.rect.translated(dx, dy); }
  bool move_node(int node, double dx, double dy, Point2, MouseButton button) override {
    if (button != MouseButton::Left) return false;
    return rect_move_node(r_, node, dx, dy);
  }
  Rect bounds() const override { return r_.rect; }
  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put_rect(p + "rect", r_.rect);
    rec.put(p + "minw", r_.limits.min_width);
    rec.put(p + "minh", r_.limits.min_height);
    rec.put(p + "maxw", r_.limits.max_width);
    rec.put(p + "maxh", r_.limits.max_height);
  }

 private:
  ResizableRect r_;
};

// ---------------------------------------------------------------------------
// Rectangle with a single moving side (the top side moves inside a track)

struct OneSideRect {
  Rect track;
  double slider{0.0};

  Rect filled() const { return Rect::from_ltrb(track.left, slider, track.right(), track.bottom()); }
};

inline Cover one_side_rect_cover(const OneSideRect& s, bool movable = true) {
  std::vector<CoverNode> nodes{
      CoverNode::rect({s.track.left, s.slider - kStripHalfWidth, s.track.width, 2 * kStripHalfWidth},
                      CursorHint::SizeNS),
      CoverNode::rect({s.track.left, s.slider, s.track.width, std::max(2.0, s.track.bottom() - s.slider)},
                      CursorHint::SizeAll),
  };
  if (!movable)
    for (auto& n : nodes) n.set_behaviour(NodeBehaviour::Frozen);
  return Cover(std::move(nodes));
}

inline bool one_side_rect_move_node(OneSideRect& s, int node, double dx, double dy) {
  if (node == 0) {
    const double y = s.slider + dy;
    if (s.track.top <= y && y <= s.track.bottom()) {
      s.slider = y;
      return true;
    }
    return false;
  }
  s.track = s.track.translated(dx, dy);
  s.slider += dy;
  return true;
}

class OneSideRectObject : public SceneObject {
 public:
  explicit OneSideRectObject(OneSideRect s) : s_(s) {}
  static std::unique_ptr<OneSideRectObject> load(const Record& rec) {
    auto o = std::make_unique<OneSideRectObject>(OneSideRect{rec.rect("track"), rec.real("slider")});
    o->load_common(rec, "");
    return o;
  }
  const OneSideRect& shape() const { return s_; }

  std::string_view type_tag() const override { return "onesiderect"; }
  Cover define_cover() const override { return one_side_rect_cover(s_, movable()); }
  void move(double dx, double dy) override { one_side_rect_move_node(s_, 1, dx, dy); }
  bool move_node(int node, double dx, double dy, Point2, MouseButton button) override {
    if (button != MouseButton::Left) return false;
    return one_side_rect_move_node(s_, node, dx, dy);
  }
  Rect bounds() const override { return s_.track; }
  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put_rect(p + "track", s_.track);
    rec.put(p + "slider", s_.slider);
  }

 private:
  OneSideRect s_;
};

// ---------------------------------------------------------------------------
// N-node circle

struct CircleNR {
  Point2 center;
  double radius{50.0};
  double min_radius{20.0};
};

/// Border nodes around a circle of radius r, starting at angle 0.
inline void append_border_nodes(std::vector<CoverNode>& nodes, Point2 center, double r,
                                CursorHint cursor = CursorHint::Hand) {
  const int k = perimeter_node_count(r);
  for (int i = 0; i < k; ++i)
    nodes.push_back(CoverNode::circle(point_on_ray(center, kTwoPi * i / k, r), kBorderNodeRadius, cursor));
}

/// Node 0 is the big moving circle; nodes 1..k sit on the border for resizing.
inline Cover nnode_circle_cover(const CircleNR& c) {
  std::vector<CoverNode> nodes;
  nodes.push_back(CoverNode::circle(c.center, std::max(kMinNodeRadius, c.radius - kBorderNodeRadius + 1.0),
                                    CursorHint::SizeAll));
  append_border_nodes(nodes, c.center, c.radius);
  for (auto& n : nodes) n.set_clearance(false);
  return Cover(std::move(nodes));
}

class CircleObject : public SceneObject {
 public:
  explicit CircleObject(CircleNR c) : c_(c) {}
  static std::unique_ptr<CircleObject> load(const Record& rec) {
    auto o = std::make_unique<CircleObject>(CircleNR{rec.point("center"), rec.real("r"), rec.real("minr")});
    o->load_common(rec, "");
    return o;
  }
  const CircleNR& shape() const { return c_; }

  std::string_view type_tag() const override { return "circle"; }
  Cover define_cover() const override {
    Cover cv = nnode_circle_cover(c_);
    if (!movable())
      for (std::size_t i = 0; i < cv.size(); ++i) cv.node(i).set_behaviour(NodeBehaviour::Frozen);
    return cv;
  }
  void move(double dx, double dy) override { c_.center = c_.center + Point2{dx, dy}; }
  bool move_node(int node, double dx, double dy, Point2 pointer, MouseButton button) override {
    if (button != MouseButton::Left) return false;
    if (node == 0) {
      move(dx, dy);
      return true;
    }
    const double r = distance(c_.center, pointer);
    if (r < c_.min_radius) return false;
    c_.radius = r;
    return true;
  }
  Rect bounds() const override {
    return {c_.center.x - c_.radius, c_.center.y - c_.radius, 2 * c_.radius, 2 * c_.radius};
  }
  Point2 reference_point() const override { return c_.center; }
  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put_point(p + "center", c_.center);
    rec.put(p + "r", c_.radius);
    rec.put(p + "minr", c_.min_radius);
  }

 private:
  CircleNR c_;
};

// ---------------------------------------------------------------------------
// Ring

struct RingShape {
  Point2 center;
  double r_inner{30.0};
  double r_outer{60.0};
  double min_inner{10.0};
  double min_width{10.0};
};

struct RingLayout {
  int inner_count;
  int outer_count;
  int hole_ordinal;  // -1 when the hole is too small for a node
  int body_ordinal;
};

inline RingLayout ring_layout(const RingShape& g) {
  const int ni = perimeter_node_count(g.r_inner);
  const int no = perimeter_node_count(g.r_outer);
  const bool hole = g.r_inner - kBorderNodeRadius >= kMinNodeRadius;
  return {ni, no, hole ? ni + no : -1, ni + no + (hole ? 1 : 0)};
}

/// Inner-border nodes, outer-border nodes, a transparent hole, the body.
inline Cover ring_cover(const RingShape& g) {
  std::vector<CoverNode> nodes;
  append_border_nodes(nodes, g.center, g.r_inner);
  append_border_nodes(nodes, g.center, g.r_outer);
  if (g.r_inner - kBorderNodeRadius >= kMinNodeRadius) {
    auto hole = CoverNode::circle(g.center, g.r_inner - kBorderNodeRadius, CursorHint::Default,
                                  NodeBehaviour::Transparent);
    hole.set_clearance(false);
    nodes.push_back(hole);
  }
  auto body = CoverNode::circle(g.center, g.r_outer - kBorderNodeRadius + 1.0, CursorHint::SizeAll);
  body.set_clearance(false);
  nodes.push_back(body);
  return Cover(std::move(nodes));
}

inline bool ring_set_inner(RingShape& g, double r) {
  if (r < g.min_inner || r + g.min_width > g.r_outer) return false;
  g.r_inner = r;
  return true;
}

inline bool ring_set_outer(RingShape& g, double r) {
  if (g.r_inner + g.min_width > r) return false;
  g.r_outer = r;
  return true;
}

class RingObject : public SceneObject {
 public:
  explicit RingObject(RingShape g) : g_(g) {}
  static std::unique_ptr<RingObject> load(const Record& rec) {
    auto o = std::make_unique<RingObject>(RingShape{rec.point("center"), rec.real("rin"), rec.real("rout"),
                                                    rec.real("minin"), rec.real("minwidth")});
    o->load_common(rec, "");
    return o;
  }
  const RingShape& shape() const { return g_; }

  std::string_view type_tag() const override { return "ring"; }
  Cover define_cover() const override {
    Cover cv = ring_cover(g_);
    if (!movable())
      for (std::size_t i = 0; i < cv.size(); ++i)
        if (cv[i].behaviour() != NodeBehaviour::Transparent) cv.node(i).set_behaviour(NodeBehaviour::Frozen);
    return cv;
  }
  void move(double dx, double dy) override { g_.center = g_.center + Point2{dx, dy}; }
  bool move_node(int node, double dx, double dy, Point2 pointer, MouseButton button) override {
    if (button != MouseButton::Left) return false;
    const auto lay = ring_layout(g_);
    if (node < lay.inner_count) return ring_set_inner(g_, distance(g_.center, pointer));
    if (node < lay.inner_count + lay.outer_count) return ring_set_outer(g_, distance(g_.center, pointer));
    move(dx, dy);
    return true;
  }
  Rect bounds() const override {
    return {g_.center.x - g_.r_outer, g_.center.y - g_.r_outer, 2 * g_.r_outer, 2 * g_.r_outer};
  }
  Point2 reference_point() const override { return g_.center; }
  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put_point(p + "center", g_.center);
    rec.put(p + "rin", g_.r_inner);
    rec.put(p + "rout", g_.r_outer);
    rec.put(p + "minin", g_.min_inner);
    rec.put(p + "minwidth", g_.min_width);
  }

 private:
  RingShape g_;
};

// ---------------------------------------------------------------------------
// Sector of a circle

struct SectorShape {
  Point2 center;
  double radius{60.0};
  double start_angle{0.0};
  double sweep{kPi};
  double min_radius{20.0};
};

/// Convex wedge polygon with its apex at center, reaching past radius r.
inline std::vector<Point2> wedge_polygon(Point2 center, double from, double span, double r) {
  const int steps = std::max(1, static_cast<int>(std::ceil(span / (kPi / 4.0))));
  const double step = span / steps;
  const double reach = (r + 2.0) / std::cos(step / 2.0);
  std::vector<Point2> pts{center};
  for (int i = 0; i <= steps; ++i) pts.push_back(point_on_ray(center, from + step * i, reach));
  return pts;
}

struct SectorLayout {
  int arc_count;
  int mask_count;
  int body_ordinal;
};

inline SectorLayout sector_layout(const SectorShape& s) {
  const bool full = s.sweep >= kTwoPi;
  const int arc = full ? perimeter_node_count(s.radius)
                       : std::max(1, static_cast<int>(std::nearbyint(s.sweep * s.radius / kBorderNodeSpacing))) + 1;
  const int masks = full ? 0 : (kTwoPi - s.sweep > kPi ? 2 : 1);
  return {arc, masks, arc + masks};
}

/// Arc border nodes, transparent masks over the rest of the circle, the body.
inline Cover sector_cover(const SectorShape& s) {
  const auto lay = sector_layout(s);
  std::vector<CoverNode> nodes;
  const bool full = lay.mask_count == 0;
  for (int i = 0; i < lay.arc_count; ++i) {
    const double a = full ? kTwoPi * i / lay.arc_count : s.start_angle + s.sweep * i / (lay.arc_count - 1);
    nodes.push_back(CoverNode::circle(point_on_ray(s.center, a, s.radius), kBorderNodeRadius, CursorHint::Hand));
  }
  const double body_r = std::max(kMinNodeRadius, s.radius - kBorderNodeRadius + 1.0);
  if (!full) {
    const double rest = kTwoPi - s.sweep;
    const double pieces = lay.mask_count;
    for (int i = 0; i < lay.mask_count; ++i) {
      auto mask = CoverNode::polygon(
          wedge_polygon(s.center, s.start_angle + s.sweep + i * rest / pieces, rest / pieces, body_r),
          CursorHint::Default, NodeBehaviour::Transparent);
      nodes.push_back(mask);
    }
  }
  auto body = CoverNode::circle(s.center, body_r, CursorHint::SizeAll);
  body.set_clearance(false);
  nodes.push_back(body);
  return Cover(std::move(nodes));
}

class SectorObject : public SceneObject {
 public:
  explicit SectorObject(SectorShape s) : s_(s) {
    if (!(s_.sweep > 0.0 && s_.sweep <= kTwoPi)) throw Error(ErrorCode::InvalidNode, "sector sweep outside (0, 2pi]");
  }
  static std::unique_ptr<SectorObject> load(const Record& rec) {
    auto o = std::make_unique<SectorObject>(SectorShape{rec.point("center"), rec.real("r"), rec.real("start"),
                                                        rec.real("sweep"), rec.real("minr")});
    o->load_common(rec, "");
    return o;
  }
  const SectorShape& shape() const { return s_; }

  std::string_view type_tag() const override { return "sector"; }
  Cover define_cover() const override {
    Cover cv = sector_cover(s_);
    if (!movable())
      for (std::size_t i = 0; i < cv.size(); ++i)
        if (cv[i].behaviour() != NodeBehaviour::Transparent) cv.node(i).set_behaviour(NodeBehaviour::Frozen);
    return cv;
  }
  void move(double dx, double dy) override { s_.center = s_.center + Point2{dx, dy}; }
  bool move_node(int node, double dx, double dy, Point2 pointer, MouseButton button) override {
    if (button != MouseButton::Left) return false;
    const auto lay = sector_layout(s_);
    if (node < lay.arc_count) {
      const double r = distance(s_.center, pointer);
      if (r < s_.min_radius) return false;
      s_.radius = r;
      return true;
    }
    move(dx, dy);
    return true;
  }
  Rect bounds() const override {
    return {s_.center.x - s_.radius, s_.center.y - s_.radius, 2 * s_.radius, 2 * s_.radius};
  }
  Point2 reference_point() const override { return s_.center; }
  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put_point(p + "center", s_.center);
    rec.put(p + "r", s_.radius);
    rec.put(p + "start", s_.start_angle);
    rec.put(p + "sweep", s_.sweep);
    rec.put(p + "minr", s_.min_radius);
  }

 private:
  SectorShape s_;
};

// ---------------------------------------------------------------------------
// Rotatable text

struct TextRM {
  TextBox box;
  std::string text;
  AnchorMark rotation_anchor{AnchorMark::Center};
};

/// Deterministic text extent used in place of font metrics.
inline std::pair<double, double> text_extent(const std::string& text) {
  return {7.0 * static_cast<double>(std::max<std::size_t>(1, text.size())), 14.0};
}

inline TextRM make_text(const std::string& text, Point2 center, double angle = 0.0) {
  const auto [w, h] = text_extent(text);
  return TextRM{TextBox{w, h, angle, center, AnchorMark::Center}, text, AnchorMark::Center};
}

inline Point2 text_mark(const TextRM& t, AnchorMark m) {
  return text_basis_points(t.box)[static_cast<std::size_t>(m)];
}

/// Sets the text angle while the given mark stays in place.
inline void set_text_angle(TextRM& t, double angle, AnchorMark pivot) {
  const Point2 fixed = text_mark(t, pivot);
  t.box.angle = angle;
  const Point2 moved = text_mark(t, pivot);
  t.box.anchor = t.box.anchor + (fixed - moved);
}

inline Cover textrm_cover(const TextRM& t, bool movable = true) {
  const auto c = text_corners(t.box);
  Cover cover({CoverNode::polygon({c.begin(), c.end()}, CursorHint::SizeAll)});
  if (!movable) cover = set_node_behaviour_cursor(std::move(cover), 0, NodeBehaviour::Frozen, CursorHint::Default);
  return cover;
}

/// Pointer-driven rotation around the rotation anchor; offset is the
/// difference between text angle and pointer angle captured at catch time.
inline bool textrm_rotate(TextRM& t, Point2 pointer, double offset) {
  const Point2 pivot = text_mark(t, t.rotation_anchor);
  if (pointer == pivot) return false;
  set_text_angle(t, ray_angle(pivot, pointer) + offset, t.rotation_anchor);
  return true;
}

class TextObject : public SceneObject {
 public:
  explicit TextObject(TextRM t) : t_(std::move(t)) {}
  static std::unique_ptr<TextObject> load(const Record& rec) {
    auto o = std::make_unique<TextObject>(load_text(rec, ""));
    o->load_common(rec, "");
    return o;
  }

  const TextRM& text() const { return t_; }
  TextRM& text() { return t_; }
  Point2 center() const { return text_mark(t_, AnchorMark::Center); }
  double angle() const { return t_.box.angle; }
  void set_angle(double a) { set_text_angle(t_, a, AnchorMark::Center); }
  /// Moves the text so that its center lands on c.
  void place_center(Point2 c) { t_.box.anchor = t_.box.anchor + (c - center()); }

  std::string_view type_tag() const override { return "text"; }
  Cover define_cover() const override { return textrm_cover(t_, movable()); }
  void move(double dx, double dy) override { t_.box.anchor = t_.box.anchor + Point2{dx, dy}; }
  std::optional<Rect> on_catch(int, Point2 pointer, MouseButton button) override {
    if (button == MouseButton::Right) {
      const Point2 pivot = text_mark(t_, t_.rotation_anchor);
      rotation_offset_ = pointer == pivot ? 0.0 : t_.box.angle - ray_angle(pivot, pointer);
    }
    return std::nullopt;
  }
  bool move_node(int, double dx, double dy, Point2 pointer, MouseButton button) override {
    if (button == MouseButton::Right) return textrm_rotate(t_, pointer, rotation_offset_);
    move(dx, dy);
    return true;
  }
  Rect bounds() const override {
    const auto c = text_corners(t_.box);
    return bounding_box(c);
  }
  Point2 reference_point() const override { return center(); }
  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    save_text(rec, p);
  }

  static TextRM load_text(const Record& rec, const std::string& p) {
    TextRM t;
    t.text = rec.text(p + "text");
    t.box.width = rec.real(p + "w");
    t.box.height = rec.real(p + "h");
    t.box.angle = rec.real(p + "angle");
    t.box.anchor = rec.point(p + "anchor");
    t.box.anchor_basis = static_cast<AnchorMark>(std::clamp<long long>(rec.integer(p + "basis"), 0, 8));
    t.rotation_anchor = static_cast<AnchorMark>(std::clamp<long long>(rec.integer(p + "rot"), 0, 8));
    return t;
  }

 protected:
  void save_text(Record& rec, const std::string& p) const {
    rec.put_text(p + "text", t_.text);
    rec.put(p + "w", t_.box.width);
    rec.put(p + "h", t_.box.height);
    rec.put(p + "angle", t_.box.angle);
    rec.put_point(p + "anchor", t_.box.anchor);
    rec.put_int(p + "basis", static_cast<int>(t_.box.anchor_basis));
    rec.put_int(p + "rot", static_cast<int>(t_.rotation_anchor));
  }

  TextRM t_;
  double rotation_offset_{0.0};
};

}  // namespace movekit
