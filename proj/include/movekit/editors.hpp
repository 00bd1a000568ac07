#pragma once
/**
 * @file editors.hpp
 * @brief Widgets for editing data on a plotting area: segment sliders,
 * bounded sliders, vertically moved dots, graph dots with insertion on
 * segments, and the nest that hands out new dots.
 */

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "movekit/mover.hpp"
#include "movekit/shapes.hpp"

namespace movekit {

inline constexpr double kHalfSense = 3.0;

/// Objects with nothing to catch still need a cover; this node is never hit.
inline CoverNode placeholder_node(Point2 at) {
  return CoverNode::circle(at, kMinNodeRadius, CursorHint::Default, NodeBehaviour::Transparent);
}

// ---------------------------------------------------------------------------
// Sliders dividing a data set into segments

class SegmentedSliders : public SceneObject {
 public:
  /// Data x values are mapped linearly onto the area's horizontal extent.
  SegmentedSliders(const Rect& area, std::vector<double> xs, std::vector<double> ys, double x_lo, double x_hi)
      : area_(area), xs_(std::move(xs)), ys_(std::move(ys)), x_lo_(x_lo), x_hi_(x_hi) {
    if (!std::is_sorted(xs_.begin(), xs_.end())) throw Error(ErrorCode::BadOrder, "data x values must not decrease");
    if (xs_.size() != ys_.size()) throw Error(ErrorCode::BadIndex, "xs and ys differ in length");
    line_xs_ = {area_.left, area_.right()};
  }

  const Rect& area() const { return area_; }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  /// Border lines included: the first and the last are the area's sides.
  const std::vector<double>& line_xs() const { return line_xs_; }
  std::size_t slider_count() const { return line_xs_.size() - 2; }

  LinearMap x_map() const { return {area_.left, area_.right(), x_lo_, x_hi_}; }
  double screen_x(std::size_t i) const { return map_value(x_map(), xs_[i]); }

  /// Adds a slider on the screen x of data point i when it lies strictly between existing lines.
  bool add_slider_at_point(std::size_t i) {
    const double x = screen_x(i);
    auto it = std::lower_bound(line_xs_.begin(), line_xs_.end(), x);
    if (it == line_xs_.begin() || it == line_xs_.end() || *it == x) return false;
    line_xs_.insert(it, x);
    return true;
  }

  std::string_view type_tag() const override { return "segsliders"; }
  Cover define_cover() const override {
    std::vector<CoverNode> nodes;
    for (std::size_t i = 1; i + 1 < line_xs_.size(); ++i)
      nodes.push_back(CoverNode::rect({line_xs_[i] - kHalfSense, area_.top + kHalfSense, 2 * kHalfSense,
                                       std::max(1.0, area_.height - 2 * kHalfSense)},
                                      CursorHint::SizeWE, movable() ? NodeBehaviour::Moveable : NodeBehaviour::Frozen));
    if (nodes.empty()) nodes.push_back(placeholder_node(area_.top_left()));
    return Cover(std::move(nodes));
  }
  void move(double dx, double dy) override {
    area_ = area_.translated(dx, dy);
    for (double& x : line_xs_) x += dx;
  }

  /// Pointer clip between the neighbouring lines.
  Rect catch_clip(int node) const {
    const auto i = static_cast<std::size_t>(node) + 1;
    return Rect::from_ltrb(line_xs_[i - 1] + 1, area_.top, line_xs_[i + 1] - 1, area_.bottom());
  }
  std::optional<Rect> on_catch(int node, Point2, MouseButton button) override {
    if (button != MouseButton::Left || node < 0 || static_cast<std::size_t>(node) >= slider_count()) return std::nullopt;
    caught_x_ = line_xs_[static_cast<std::size_t>(node) + 1];
    return catch_clip(node);
  }
  bool move_node(int node, double dx, double, Point2, MouseButton button) override {
    if (button != MouseButton::Left || static_cast<std::size_t>(node) >= slider_count()) return false;
    const auto i = static_cast<std::size_t>(node) + 1;
    const double x = line_xs_[i] + dx;
    if (!(line_xs_[i - 1] < x && x < line_xs_[i + 1])) return false;
    line_xs_[i] = x;
    return true;
  }
  void on_release(int node, MouseButton button) override {
    if (button != MouseButton::Left || static_cast<std::size_t>(node) >= slider_count()) return;
    line_xs_[static_cast<std::size_t>(node) + 1] = snap(node, line_xs_[static_cast<std::size_t>(node) + 1]);
  }

  /// Screen x of the nearest data point strictly between the neighbouring
  /// lines (ties go to the smaller x); the position held at catch time when
  /// there is none.
  double snap(int node, double x) const {
    const auto i = static_cast<std::size_t>(node) + 1;
    std::optional<double> best;
    for (std::size_t k = 0; k < xs_.size(); ++k) {
      const double sx = screen_x(k);
      if (!(line_xs_[i - 1] < sx && sx < line_xs_[i + 1])) continue;
      if (!best || std::abs(sx - x) < std::abs(*best - x) || (std::abs(sx - x) == std::abs(*best - x) && sx < *best))
        best = sx;
    }
    return best.value_or(caught_x_.value_or(x));
  }

  Rect bounds() const override { return area_; }
  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put_rect(p + "area", area_);
    rec.put_reals(p + "xs", xs_);
    rec.put_reals(p + "ys", ys_);
    rec.put(p + "xlo", x_lo_);
    rec.put(p + "xhi", x_hi_);
    rec.put_reals(p + "lines", line_xs_);
  }
  static std::unique_ptr<SegmentedSliders> load(const Record& rec) {
    auto s = std::make_unique<SegmentedSliders>(rec.rect("area"), rec.reals("xs"), rec.reals("ys"), rec.real("xlo"),
                                                rec.real("xhi"));
    s->load_common(rec, "");
    s->line_xs_ = rec.reals("lines");
    if (s->line_xs_.size() < 2 || std::adjacent_find(s->line_xs_.begin(), s->line_xs_.end(), std::greater_equal<>()) !=
                                      s->line_xs_.end())
      rec.fail("slider lines must be strictly increasing");
    return s;
  }

 private:
  Rect area_;
  std::vector<double> xs_;
  std::vector<double> ys_;
  double x_lo_;
  double x_hi_;
  std::vector<double> line_xs_;
  std::optional<double> caught_x_;
};

inline Rect slider_catch_clip(const SegmentedSliders& s, int node) { return s.catch_clip(node); }

/// Nearest data screen x for a slider released at x (ties to the smaller x).
inline double slider_snap(const SegmentedSliders& s, int node, double release_x) { return s.snap(node, release_x); }

// ---------------------------------------------------------------------------
// Slider whose movement range is fixed when it is caught

class BoundedSlider : public SceneObject {
 public:
  BoundedSlider(double x, double y_top, double y_bottom) : x_(x), y_top_(y_top), y_bottom_(y_bottom) {
    left_ = right_ = x;
  }

  double x() const { return x_; }
  double left_bound() const { return left_; }
  double right_bound() const { return right_; }
  void set_limits(double left, double right) {
    limit_left_ = left;
    limit_right_ = right;
  }

  void start(double left, double right) {
    if (!(left <= x_ && x_ <= right)) throw Error(ErrorCode::BadBounds, "slider bounds must enclose its position");
    left_ = left;
    right_ = right;
  }

  std::string_view type_tag() const override { return "boundedslider"; }
  Cover define_cover() const override {
    return Cover({CoverNode::rect({x_ - kHalfSense, y_top_, 2 * kHalfSense, std::max(1.0, y_bottom_ - y_top_)},
                                  CursorHint::SizeWE, movable() ? NodeBehaviour::Moveable : NodeBehaviour::Frozen)});
  }
  void move(double dx, double dy) override {
    x_ += dx;
    y_top_ += dy;
    y_bottom_ += dy;
    limit_left_ += dx;
    limit_right_ += dx;
  }
  std::optional<Rect> on_catch(int, Point2, MouseButton) override {
    start(std::min(limit_left_, x_), std::max(limit_right_, x_));
    return std::nullopt;
  }
  bool move_node(int, double dx, double, Point2, MouseButton button) override {
    if (button != MouseButton::Left) return false;
    const double x = x_ + dx;
    if (!(left_ <= x && x <= right_)) return false;
    x_ = x;
    return true;
  }
  Rect bounds() const override { return Rect::from_ltrb(x_ - kHalfSense, y_top_, x_ + kHalfSense, y_bottom_); }
  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put(p + "x", x_);
    rec.put(p + "top", y_top_);
    rec.put(p + "bottom", y_bottom_);
    rec.put(p + "liml", limit_left_);
    rec.put(p + "limr", limit_right_);
  }
  static std::unique_ptr<BoundedSlider> load(const Record& rec) {
    auto s = std::make_unique<BoundedSlider>(rec.real("x"), rec.real("top"), rec.real("bottom"));
    s->load_common(rec, "");
    s->set_limits(rec.real("liml"), rec.real("limr"));
    return s;
  }

 private:
  double x_;
  double y_top_;
  double y_bottom_;
  double left_;
  double right_;
  double limit_left_{-1.0e9};
  double limit_right_{1.0e9};
};

inline void bounded_slider_start(BoundedSlider& b, double left, double right) { b.start(left, right); }

/// Bounds for one of two sliders over a row of dots so that they never share a dot:
/// the moving slider stays strictly on its side of the other one's dot.
inline std::pair<double, double> local_slider_bounds(std::span<const double> dot_xs, double other_x, bool moving_is_right,
                                                     double area_left, double area_right) {
  if (moving_is_right) {
    const auto it = std::upper_bound(dot_xs.begin(), dot_xs.end(), other_x);
    return {it == dot_xs.end() ? area_right : *it, area_right};
  }
  const auto it = std::lower_bound(dot_xs.begin(), dot_xs.end(), other_x);
  return {area_left, it == dot_xs.begin() ? area_left : *(it - 1)};
}

// ---------------------------------------------------------------------------
// Dots moved only up and down

class VerticalDots : public SceneObject {
 public:
  VerticalDots(const Rect& area, std::vector<Point2> points, double v_lo = 0.0, double v_hi = 1.0,
               double radius = 5.0)
      : area_(area), points_(std::move(points)), v_lo_(v_lo), v_hi_(v_hi), radius_(radius) {}

  const Rect& area() const { return area_; }
  const std::vector<Point2>& points() const { return points_; }
  LinearMap y_map() const { return {area_.bottom(), area_.top, v_lo_, v_hi_}; }
  double value(std::size_t i) const { return unmap(y_map(), points_.at(i).y); }
  std::vector<double> values() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < points_.size(); ++i) out.push_back(value(i));
    return out;
  }

  bool move_dot(std::size_t i, double dy) {
    if (i >= points_.size()) return false;
    const double y = points_[i].y + dy;
    if (!(area_.top <= y && y <= area_.bottom())) return false;
    points_[i].y = y;
    return true;
  }

  std::string_view type_tag() const override { return "vdots"; }
  Cover define_cover() const override {
    std::vector<CoverNode> nodes;
    for (const auto& p : points_)
      nodes.push_back(CoverNode::circle(p, radius_, CursorHint::SizeNS,
                                        movable() ? NodeBehaviour::Moveable : NodeBehaviour::Frozen));
    if (nodes.empty()) nodes.push_back(placeholder_node(area_.top_left()));
    return Cover(std::move(nodes));
  }
  void move(double dx, double dy) override {
    area_ = area_.translated(dx, dy);
    for (auto& p : points_) p = p + Point2{dx, dy};
  }
  bool move_node(int node, double, double dy, Point2, MouseButton button) override {
    if (button != MouseButton::Left || node < 0) return false;
    return move_dot(static_cast<std::size_t>(node), dy);
  }
  Rect bounds() const override { return area_; }
  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put_rect(p + "area", area_);
    rec.put_points(p + "pts", points_);
    rec.put(p + "vlo", v_lo_);
    rec.put(p + "vhi", v_hi_);
    rec.put(p + "r", radius_);
  }
  static std::unique_ptr<VerticalDots> load(const Record& rec) {
    auto d = std::make_unique<VerticalDots>(rec.rect("area"), rec.points("pts"), rec.real("vlo"), rec.real("vhi"),
                                            rec.real("r"));
    d->load_common(rec, "");
    return d;
  }

 private:
  Rect area_;
  std::vector<Point2> points_;
  double v_lo_;
  double v_hi_;
  double radius_;
};

inline bool dots_move(VerticalDots& v, std::size_t i, double dy) { return v.move_dot(i, dy); }

// ---------------------------------------------------------------------------
// Graph defined by dots; new dots are inserted by pressing on a segment

inline constexpr double kOutsideExtent = 4000.0;

class GraphDots : public SceneObject {
 public:
  static constexpr int kMaskCount = 4;

  GraphDots(const Rect& plot_area, std::vector<Point2> points, double x_lo = 0.0, double x_hi = 1.0,
            double y_lo = 0.0, double y_hi = 1.0, double radius = 5.0)
      : area_(plot_area), points_(std::move(points)), x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi),
        radius_(radius) {
    for (std::size_t i = 1; i < points_.size(); ++i)
      if (points_[i].x < points_[i - 1].x) throw Error(ErrorCode::BadOrder, "dots must not go back in x");
  }

  const Rect& plot_area() const { return area_; }
  const std::vector<Point2>& points() const { return points_; }
  std::size_t dot_count() const { return points_.size(); }
  LinearMap x_map() const { return {area_.left, area_.right(), x_lo_, x_hi_}; }
  LinearMap y_map() const { return {area_.bottom(), area_.top, y_lo_, y_hi_}; }
  double arg(std::size_t i) const { return unmap(x_map(), points_.at(i).x); }
  double val(std::size_t i) const { return unmap(y_map(), points_.at(i).y); }
  std::vector<double> args() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < points_.size(); ++i) out.push_back(arg(i));
    return out;
  }

  int first_dot_node() const { return kMaskCount; }
  int first_strip_node() const { return kMaskCount + static_cast<int>(points_.size()); }

  /// Inserts a dot at the point of segment k nearest to press; returns its index.
  std::size_t insert_on_strip(int strip, Point2 press) {
    if (strip < 0 || static_cast<std::size_t>(strip) + 1 >= points_.size())
      throw Error(ErrorCode::BadIndex, "no such segment between dots");
    const auto k = static_cast<std::size_t>(strip);
    Point2 foot = distance_to_segment(press, {points_[k], points_[k + 1]}).foot;
    foot = {std::round(foot.x), std::round(foot.y)};
    foot.x = std::clamp(foot.x, points_[k].x, points_[k + 1].x);
    points_.insert(points_.begin() + static_cast<std::ptrdiff_t>(k + 1), foot);
    return k + 1;
  }

  /// Inserts a dot keeping the x order; equal x goes after the existing dots.
  std::size_t insert_in_x_order(Point2 p) {
    auto it = std::upper_bound(points_.begin(), points_.end(), p.x, [](double x, const Point2& q) { return x < q.x; });
    const auto i = static_cast<std::size_t>(it - points_.begin());
    points_.insert(it, p);
    return i;
  }

  /// Table edit in physical values; rejected when it breaks the x order.
  void set_pair(std::size_t i, double x, double y) {
    if (i >= points_.size()) throw Error(ErrorCode::BadIndex, "no such dot");
    const Point2 p{map_value(x_map(), x), map_value(y_map(), y)};
    if ((i > 0 && p.x < points_[i - 1].x) || (i + 1 < points_.size() && p.x > points_[i + 1].x))
      throw Error(ErrorCode::BadOrder, "edited dot breaks the x order");
    points_[i] = p;
  }

  void remove_dot(std::size_t i) {
    if (i >= points_.size()) throw Error(ErrorCode::BadIndex, "no such dot");
    points_.erase(points_.begin() + static_cast<std::ptrdiff_t>(i));
  }

  std::string_view type_tag() const override { return "graphdots"; }
  Cover define_cover() const override {
    const Rect& rc = area_;
    const double l = rc.left - kOutsideExtent, t = rc.top - kOutsideExtent;
    const double r = rc.right() + kOutsideExtent, b = rc.bottom() + kOutsideExtent;
    std::vector<CoverNode> nodes;
    auto mask = [&](double x0, double y0, double x1, double y1) {
      nodes.push_back(CoverNode::rect(Rect::from_ltrb(x0, y0, x1, y1), CursorHint::Default, NodeBehaviour::Transparent));
    };
    mask(l, t, rc.left, b);            // left
    mask(rc.right(), t, r, b);         // right
    mask(l, t, r, rc.top);             // top
    mask(l, rc.bottom(), r, b);        // bottom
    const auto dot_behaviour = movable() ? NodeBehaviour::Moveable : NodeBehaviour::Frozen;
    for (const auto& p : points_) nodes.push_back(CoverNode::circle(p, radius_, CursorHint::Hand, dot_behaviour));
    for (std::size_t i = 1; i < points_.size(); ++i)
      nodes.push_back(CoverNode::strip(points_[i - 1], points_[i], kStripHalfWidth, CursorHint::Hand,
                                       NodeBehaviour::Frozen));
    return Cover(std::move(nodes));
  }
  void move(double dx, double dy) override {
    area_ = area_.translated(dx, dy);
    for (auto& p : points_) p = p + Point2{dx, dy};
  }
  bool move_node(int node, double dx, double dy, Point2, MouseButton button) override {
    if (button != MouseButton::Left) return false;
    const int i = node - first_dot_node();
    if (i < 0 || i >= static_cast<int>(points_.size())) return false;
    const auto k = static_cast<std::size_t>(i);
    const Point2 p = points_[k] + Point2{dx, dy};
    if ((k > 0 && p.x < points_[k - 1].x) || (k + 1 < points_.size() && p.x > points_[k + 1].x)) return false;
    points_[k] = p;
    return true;
  }
  Rect bounds() const override { return area_; }
  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put_rect(p + "area", area_);
    rec.put_points(p + "pts", points_);
    rec.put(p + "xlo", x_lo_);
    rec.put(p + "xhi", x_hi_);
    rec.put(p + "ylo", y_lo_);
    rec.put(p + "yhi", y_hi_);
    rec.put(p + "r", radius_);
  }
  static std::unique_ptr<GraphDots> load(const Record& rec) {
    auto g = std::make_unique<GraphDots>(rec.rect("area"), rec.points("pts"), rec.real("xlo"), rec.real("xhi"),
                                         rec.real("ylo"), rec.real("yhi"), rec.real("r"));
    g->load_common(rec, "");
    return g;
  }

 private:
  Rect area_;
  std::vector<Point2> points_;
  double x_lo_, x_hi_, y_lo_, y_hi_;
  double radius_;
};

inline Cover graphdots_cover(const GraphDots& g) { return g.define_cover(); }

/// Strip insertion driven through the mover: a new dot appears on the caught
/// strip and the drag passes to it at the same pointer position.
inline std::optional<std::size_t> graphdots_insert_on_strip(GraphDots& g, Mover& mover, Point2 press) {
  const auto& c = mover.caught();
  if (!c || c->object != &g || c->shape_kind != ShapeKind::Strip) return std::nullopt;
  const int strip = c->node_ordinal - g.first_strip_node();
  const MouseButton button = c->button;
  const std::size_t i = g.insert_on_strip(strip, press);
  mover.refresh_covers();
  mover.transfer(press, button);
  return i;
}

// ---------------------------------------------------------------------------
// Nest: a panel with a patch that is dragged onto the plot to add a dot

class DotNest : public SceneObject {
 public:
  DotNest(const Rect& panel, double patch_radius = 6.0)
      : panel_(panel), nest_(panel.center()), patch_(panel.center()), radius_(patch_radius) {}

  const Rect& panel() const { return panel_; }
  Point2 nest_point() const { return nest_; }
  Point2 patch_point() const { return patch_; }

  void return_home() { patch_ = nest_; }

  std::string_view type_tag() const override { return "dotnest"; }
  Cover define_cover() const override {
    const auto b = movable() ? NodeBehaviour::Moveable : NodeBehaviour::Frozen;
    return Cover({CoverNode::circle(patch_, radius_, CursorHint::Hand, b), CoverNode::rect(panel_, CursorHint::SizeAll, b)});
  }
  void move(double dx, double dy) override {
    panel_ = panel_.translated(dx, dy);
    nest_ = nest_ + Point2{dx, dy};
    patch_ = patch_ + Point2{dx, dy};
  }
  bool move_node(int node, double dx, double dy, Point2, MouseButton button) override {
    if (button != MouseButton::Left) return false;
    if (node == 0)
      patch_ = patch_ + Point2{dx, dy};
    else
      move(dx, dy);
    return true;
  }
  void on_release(int node, MouseButton) override {
    if (node == 0) return_home();
  }
  Rect bounds() const override { return panel_; }
  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put_rect(p + "panel", panel_);
    rec.put(p + "r", radius_);
  }
  static std::unique_ptr<DotNest> load(const Record& rec) {
    auto d = std::make_unique<DotNest>(rec.rect("panel"), rec.real("r"));
    d->load_common(rec, "");
    return d;
  }

 private:
  Rect panel_;
  Point2 nest_;
  Point2 patch_;
  double radius_;
};

/// Patch goes home; a dot is created when the release lands on the plot but not on the panel.
inline std::optional<Point2> dotnest_release(DotNest& d, Point2 release_point, const Rect& plot_area) {
  d.return_home();
  if (plot_area.contains(release_point) && !d.panel().contains(release_point)) return release_point;
  return std::nullopt;
}

/// Dots go ahead of sliders, and both ahead of the plot they edit.
inline void sliders_vs_dots_order(Mover& mover, SceneObject* dots, SceneObject* sliders, SceneObject* plot) {
  for (SceneObject* o : {dots, sliders, plot})
    if (o) o->into_mover(mover, mover.size());
}

}  // namespace movekit
