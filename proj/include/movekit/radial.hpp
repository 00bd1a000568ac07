#pragma once
/**
 * @file radial.hpp
 * @brief Round charts: pie chart, ring set, ring with sliding partitions,
 * and the comments that follow circles, sectors and rings.
 */

#include <memory>
#include <numeric>
#include <vector>

#include "movekit/shapes.hpp"

namespace movekit {

/// Sector angles proportional to the values; they add up to a full turn.
inline std::vector<double> pie_sweeps(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) {
    if (v < 0.0) throw Error(ErrorCode::NegativeValue, "values cannot be negative");
    sum += v;
  }
  if (!(sum > 0.0)) throw Error(ErrorCode::AllZero, "at least one value must be positive");
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(kTwoPi * v / sum);
  return out;
}

/// Text angle turned by half a circle whenever it would read upside down.
inline double easy_to_read_angle(double a) {
  const double n = normalize_angle(a);
  if (n > kPi / 2 && n < 3 * kPi / 2) return normalize_angle(n + kPi);
  return a;
}

// ---------------------------------------------------------------------------
// Comments positioned relative to round parents

enum class RadialMode { ToCircle, ToSector, ToRing };

struct RadialGeometry {
  Point2 center;
  double r_inner{0.0};  // unused by circles and sectors
  double r_outer{0.0};
  double sector_start{0.0};  // used by sectors only
};

struct RadialPlacement {
  double coef{0.0};
  bool inside{true};
  double angle{0.0};  // relative to sector_start for sectors
};

inline double radial_distance(RadialMode mode, const RadialGeometry& g, const RadialPlacement& pl) {
  if (!pl.inside) return g.r_outer + pl.coef;
  if (mode != RadialMode::ToRing) return pl.coef * g.r_outer;
  if (pl.coef < 0.0) return (1.0 + pl.coef) * g.r_inner;
  return g.r_inner + pl.coef * (g.r_outer - g.r_inner);
}

inline Point2 radial_point(RadialMode mode, const RadialGeometry& g, const RadialPlacement& pl) {
  const double a = mode == RadialMode::ToSector ? g.sector_start + pl.angle : pl.angle;
  return point_on_ray(g.center, a, radial_distance(mode, g, pl));
}

/// Coefficients describing point p relative to the parent.
inline RadialPlacement radial_placement(RadialMode mode, const RadialGeometry& g, Point2 p) {
  RadialPlacement pl;
  const double d = distance(g.center, p);
  const double a = d > 0.0 ? ray_angle(g.center, p) : 0.0;
  pl.angle = mode == RadialMode::ToSector ? a - g.sector_start : a;
  if (d > g.r_outer) {
    pl.inside = false;
    pl.coef = std::max(1.0, d - g.r_outer);
    return pl;
  }
  if (mode != RadialMode::ToRing) {
    pl.coef = g.r_outer > 0.0 ? d / g.r_outer : 0.0;
  } else if (d <= g.r_inner) {
    pl.coef = g.r_inner > 0.0 ? d / g.r_inner - 1.0 : 0.0;
  } else {
    pl.coef = (d - g.r_inner) / (g.r_outer - g.r_inner);
  }
  return pl;
}

class RadialComment : public TextObject {
 public:
  RadialComment(TextRM t, RadialMode mode, const RadialGeometry& parent)
      : TextObject(std::move(t)), mode_(mode), parent_(parent) {
    attach(parent);
  }

  RadialMode mode() const { return mode_; }
  const RadialPlacement& placement() const { return pl_; }
  const RadialGeometry& parent_geometry() const { return parent_; }

  void attach(const RadialGeometry& g) {
    parent_ = g;
    pl_ = radial_placement(mode_, g, center());
  }

  /// Follows a change of the parent's geometry; returns the new anchor point.
  Point2 sync(const RadialGeometry& g) {
    parent_ = g;
    const Point2 p = radial_point(mode_, g, pl_);
    place_center(p);
    return p;
  }

  void translate_with_parent(double dx, double dy) {
    TextObject::move(dx, dy);
    parent_.center = parent_.center + Point2{dx, dy};
  }

  std::string_view type_tag() const override { return "radialcomment"; }
  void move(double dx, double dy) override {
    TextObject::move(dx, dy);
    attach(parent_);
  }

  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    save_text(rec, p);
    rec.put_int(p + "mode", static_cast<int>(mode_));
    rec.put(p + "coef", pl_.coef);
    rec.put_bool(p + "inside", pl_.inside);
    rec.put(p + "ang", pl_.angle);
  }
  static std::unique_ptr<RadialComment> load(const Record& rec, const std::string& p, const RadialGeometry& g) {
    const auto mode = static_cast<RadialMode>(std::clamp<long long>(rec.integer(p + "mode"), 0, 2));
    auto c = std::make_unique<RadialComment>(load_text(rec, p), mode, g);
    c->load_common(rec, p);
    c->pl_ = {rec.real(p + "coef"), rec.boolean(p + "inside"), rec.real(p + "ang")};
    c->parent_ = g;
    return c;
  }

 private:
  RadialMode mode_;
  RadialGeometry parent_;
  RadialPlacement pl_;
};

inline Point2 radial_comment_sync(RadialComment& c, const RadialGeometry& g) { return c.sync(g); }

namespace detail {

inline void save_comments(Record& rec, const std::string& key,
                          const std::vector<std::unique_ptr<RadialComment>>& list) {
  rec.put_int(key + "n", static_cast<long long>(list.size()));
  for (std::size_t i = 0; i < list.size(); ++i) list[i]->save(rec, key + std::to_string(i) + ".");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pie chart

class PieChart : public SceneObject {
 public:
  PieChart(CircleNR circle, std::vector<double> values, double phase = 0.0)
      : circle_(circle), values_(std::move(values)), phase_(phase) {
    sweeps_ = pie_sweeps(values_);
  }

  /// One comment per sector placed in the middle of its sector.
  void add_default_sector_comments(double coef = 0.7) {
    sector_comments_.clear();
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const auto g = sector_geometry(i);
      const Point2 p = point_on_ray(g.center, g.sector_start + sweeps_[i] / 2, coef * circle_.radius);
      add_sector_comment(format_value(values_[i]), p);
    }
  }
  RadialComment& add_sector_comment(const std::string& text, Point2 p) {
    const auto g = sector_geometry(sector_comments_.size() % values_.size());
    sector_comments_.push_back(std::make_unique<RadialComment>(make_text(text, p), RadialMode::ToSector, g));
    adopt(*sector_comments_.back());
    return *sector_comments_.back();
  }
  RadialComment& add_circle_comment(const std::string& text, Point2 p) {
    circle_comments_.push_back(std::make_unique<RadialComment>(make_text(text, p), RadialMode::ToCircle,
                                                               circle_geometry()));
    adopt(*circle_comments_.back());
    return *circle_comments_.back();
  }

  const CircleNR& circle() const { return circle_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& sweeps() const { return sweeps_; }
  double phase() const { return phase_; }
  bool fix_angles() const { return fix_angles_; }
  bool easy_to_read() const { return easy_to_read_; }
  void set_fix_angles(bool f) { fix_angles_ = f; }
  void set_easy_to_read(bool f) { easy_to_read_ = f; }
  std::vector<std::unique_ptr<RadialComment>>& sector_comments() { return sector_comments_; }
  std::vector<std::unique_ptr<RadialComment>>& circle_comments() { return circle_comments_; }
  const std::vector<std::unique_ptr<RadialComment>>& sector_comments() const { return sector_comments_; }
  const std::vector<std::unique_ptr<RadialComment>>& circle_comments() const { return circle_comments_; }

  double sector_start(std::size_t i) const {
    double a = phase_;
    for (std::size_t j = 0; j < i; ++j) a += sweeps_[j];
    return a;
  }
  RadialGeometry circle_geometry() const { return {circle_.center, 0.0, circle_.radius, 0.0}; }
  RadialGeometry sector_geometry(std::size_t i) const {
    return {circle_.center, 0.0, circle_.radius, sector_start(i)};
  }

  void set_values(std::vector<double> values) {
    auto sw = pie_sweeps(values);
    values_ = std::move(values);
    sweeps_ = std::move(sw);
    sync_comments();
  }

  /// Turns the chart; sector comments go with their sectors.
  void rotate(double dphi) {
    phase_ += dphi;
    for (std::size_t i = 0; i < sector_comments_.size(); ++i) {
      auto& c = *sector_comments_[i];
      c.sync(sector_geometry(i % values_.size()));
      if (!fix_angles_) {
        const double a = c.angle() + dphi;
        c.set_angle(easy_to_read_ ? easy_to_read_angle(a) : a);
      }
    }
  }

  /// Sector texts turned along their radii.
  void sector_texts_to_center() {
    for (auto& c : sector_comments_) {
      const Point2 p = c->center();
      const double a = p == circle_.center ? 0.0 : ray_angle(circle_.center, p);
      c->set_angle(easy_to_read_angle(a));
    }
  }

  std::string_view type_tag() const override { return "pie"; }
  Cover define_cover() const override {
    Cover cv = nnode_circle_cover(circle_);
    if (!movable())
      for (std::size_t i = 0; i < cv.size(); ++i) cv.node(i).set_behaviour(NodeBehaviour::Frozen);
    return cv;
  }
  void move(double dx, double dy) override {
    circle_.center = circle_.center + Point2{dx, dy};
    for (auto& c : sector_comments_) c->translate_with_parent(dx, dy);
    for (auto& c : circle_comments_) c->translate_with_parent(dx, dy);
  }
  std::optional<Rect> on_catch(int, Point2 p, MouseButton button) override {
    if (button == MouseButton::Right)
      rotation_offset_ = p == circle_.center ? 0.0 : phase_ - ray_angle(circle_.center, p);
    return std::nullopt;
  }
  bool move_node(int node, double dx, double dy, Point2 pointer, MouseButton button) override {
    if (button == MouseButton::Right) {
      if (pointer == circle_.center) return false;
      rotate(ray_angle(circle_.center, pointer) + rotation_offset_ - phase_);
      return true;
    }
    if (node == 0) {
      move(dx, dy);
      return true;
    }
    const double r = distance(circle_.center, pointer);
    if (r < circle_.min_radius) return false;
    circle_.radius = r;
    sync_comments();
    return true;
  }
  Rect bounds() const override {
    return {circle_.center.x - circle_.radius, circle_.center.y - circle_.radius, 2 * circle_.radius,
            2 * circle_.radius};
  }
  Point2 reference_point() const override { return circle_.center; }

  void set_visible(bool v) override {
    SceneObject::set_visible(v);
    cascade();
  }
  void set_visible_as_member(bool v) override {
    SceneObject::set_visible_as_member(v);
    cascade();
  }
  void into_mover(RegistrationQueue& queue, std::size_t pos) override {
    if (!effectively_visible()) return;
    queue.insert(pos, *this);
    for (auto& c : circle_comments_) c->into_mover(queue, pos);
    for (auto& c : sector_comments_) c->into_mover(queue, pos);
  }
  std::optional<PartPath> locate(ObjectId part) const override {
    for (std::size_t i = 0; i < sector_comments_.size(); ++i)
      if (sector_comments_[i]->id() == part) return PartPath{0, std::nullopt, std::nullopt, i, false};
    for (std::size_t i = 0; i < circle_comments_.size(); ++i)
      if (circle_comments_[i]->id() == part)
        return PartPath{0, std::nullopt, std::nullopt, sector_comments_.size() + i, false};
    return std::nullopt;
  }

  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put_point(p + "center", circle_.center);
    rec.put(p + "r", circle_.radius);
    rec.put(p + "minr", circle_.min_radius);
    rec.put_reals(p + "values", values_);
    rec.put(p + "phase", phase_);
    rec.put_bool(p + "fix", fix_angles_);
    rec.put_bool(p + "easy", easy_to_read_);
    detail::save_comments(rec, p + "s", sector_comments_);
    detail::save_comments(rec, p + "k", circle_comments_);
  }
  static std::unique_ptr<PieChart> load(const Record& rec) {
    auto pie = std::make_unique<PieChart>(CircleNR{rec.point("center"), rec.real("r"), rec.real("minr")},
                                          rec.reals("values"), rec.real("phase"));
    pie->load_common(rec, "");
    pie->fix_angles_ = rec.boolean("fix");
    pie->easy_to_read_ = rec.boolean("easy");
    for (long long i = 0, n = rec.integer("sn"); i < n; ++i) {
      pie->sector_comments_.push_back(RadialComment::load(
          rec, "s" + std::to_string(i) + ".", pie->sector_geometry(static_cast<std::size_t>(i) % pie->values_.size())));
      pie->adopt(*pie->sector_comments_.back());
    }
    for (long long i = 0, n = rec.integer("kn"); i < n; ++i) {
      pie->circle_comments_.push_back(RadialComment::load(rec, "k" + std::to_string(i) + ".", pie->circle_geometry()));
      pie->adopt(*pie->circle_comments_.back());
    }
    return pie;
  }

 private:
  static std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
  }

  void adopt(RadialComment& c) {
    c.set_parent_id(id());
    c.set_visible_as_member(effectively_visible());
  }

  void cascade() {
    const bool m = visible() && visible_as_member();
    for (auto& c : sector_comments_) c->set_visible_as_member(m);
    for (auto& c : circle_comments_) c->set_visible_as_member(m);
  }

  void sync_comments() {
    for (std::size_t i = 0; i < sector_comments_.size(); ++i)
      sector_comments_[i]->sync(sector_geometry(i % values_.size()));
    for (auto& c : circle_comments_) c->sync(circle_geometry());
  }

  CircleNR circle_;
  std::vector<double> values_;
  std::vector<double> sweeps_;
  double phase_;
  bool fix_angles_{false};
  bool easy_to_read_{true};
  double rotation_offset_{0.0};
  std::vector<std::unique_ptr<RadialComment>> sector_comments_;
  std::vector<std::unique_ptr<RadialComment>> circle_comments_;
};

inline void pie_rotate(PieChart& p, double dphi) { p.rotate(dphi); }
inline void sector_texts_to_center(PieChart& p) { p.sector_texts_to_center(); }

// ---------------------------------------------------------------------------
// Ring with sliding partitions between its sectors

inline constexpr double kRingBand = 3.0;        // half-height of the border trapezoids
inline constexpr double kRingNodeWidth = 8.0;   // arc length of one border trapezoid
inline constexpr double kMinSectorAngle = 0.05;

struct SectorRingShape {
  Point2 center;
  double r_inner{40.0};
  double r_outer{80.0};
  std::vector<double> values{1.0, 1.0};
  double phase{0.0};
  bool clockwise{false};
  double min_inner{10.0};
  double min_width{10.0};

  /// Signed sector angles: negative when the ring is drawn clockwise.
  std::vector<double> sweeps() const {
    auto s = pie_sweeps(values);
    if (clockwise)
      for (double& a : s) a = -a;
    return s;
  }
  int outer_count() const { return std::max(3, static_cast<int>(std::nearbyint(kTwoPi * r_outer / kRingNodeWidth))); }
  int inner_count() const { return std::max(3, static_cast<int>(std::nearbyint(kTwoPi * r_inner / kRingNodeWidth))); }
  int partition_first() const { return outer_count() + inner_count(); }
};

inline void append_trapezoids(std::vector<CoverNode>& nodes, Point2 c, double r, int n) {
  const double below = std::max(0.0, r - kRingBand);
  const double above = r + kRingBand;
  Point2 p0 = point_on_ray(c, 0.0, below);
  Point2 p1 = point_on_ray(c, 0.0, above);
  for (int i = 0; i < n; ++i) {
    const double a = kTwoPi * (i + 1) / n;
    const Point2 p2 = point_on_ray(c, a, above);
    const Point2 p3 = point_on_ray(c, a, below);
    nodes.push_back(CoverNode::polygon({p0, p1, p2, p3}, CursorHint::Hand));
    p0 = p3;
    p1 = p2;
  }
}

/// Outer border trapezoids, inner border trapezoids, partition strips,
/// transparent hole, the body.
inline Cover sector_ring_cover(const SectorRingShape& g) {
  std::vector<CoverNode> nodes;
  append_trapezoids(nodes, g.center, g.r_outer, g.outer_count());
  append_trapezoids(nodes, g.center, g.r_inner, g.inner_count());
  const auto sw = g.sweeps();
  double a = g.phase;
  for (double s : sw) {
    nodes.push_back(CoverNode::strip(point_on_ray(g.center, a, g.r_inner), point_on_ray(g.center, a, g.r_outer),
                                     kStripHalfWidth, CursorHint::Hand));
    a += s;
  }
  const double hole = std::max(kMinNodeRadius, g.r_inner - kRingBand);
  auto hole_node = CoverNode::circle(g.center, hole, CursorHint::Default, NodeBehaviour::Transparent);
  hole_node.set_clearance(false);
  nodes.push_back(hole_node);
  auto body = CoverNode::circle(g.center, g.r_outer, CursorHint::SizeAll);
  body.set_clearance(false);
  nodes.push_back(body);
  return Cover(std::move(nodes));
}

struct ResectorState {
  int boundary_index{0};
  double min_angle{0.0};
  double max_angle{0.0};
  double pair_sum{0.0};
  std::size_t cw_index{0};
  std::size_t ccw_index{0};
};

inline ResectorState start_resectoring(const SectorRingShape& g, int node) {
  const int first = g.partition_first();
  const int n = static_cast<int>(g.values.size());
  if (node < first || node >= first + n) throw Error(ErrorCode::NotAPartition, "node is not a partition strip");
  const auto sw = g.sweeps();
  ResectorState st;
  st.boundary_index = node - first;
  double caught = g.phase;
  for (int i = 0; i < st.boundary_index; ++i) caught += sw[static_cast<std::size_t>(i)];
  const auto i = static_cast<std::size_t>(st.boundary_index);
  const std::size_t prev = i == 0 ? static_cast<std::size_t>(n - 1) : i - 1;
  if (g.clockwise) {
    st.cw_index = i;
    st.ccw_index = prev;
    st.min_angle = caught + sw[st.cw_index];
    st.max_angle = caught - sw[st.ccw_index];
  } else {
    st.ccw_index = i;
    st.cw_index = prev;
    st.max_angle = caught + sw[st.ccw_index];
    st.min_angle = caught - sw[st.cw_index];
  }
  st.pair_sum = g.values[st.cw_index] + g.values[st.ccw_index];
  return st;
}

/// Moves the caught partition toward the pointer when both neighbours keep
/// the minimum angle; the two values share their constant sum.
inline bool resector_move(SectorRingShape& g, const ResectorState& st, Point2 pointer) {
  if (st.cw_index == st.ccw_index || pointer == g.center) return false;
  double theta = ray_angle(g.center, pointer);
  while (theta < st.min_angle) theta += kTwoPi;
  while (theta >= st.min_angle + kTwoPi) theta -= kTwoPi;
  if (!(st.min_angle + kMinSectorAngle < theta && theta < st.max_angle - kMinSectorAngle)) return false;
  const double part_ccw = (st.max_angle - theta) / (st.max_angle - st.min_angle);
  if (st.boundary_index == 0) g.phase = theta;
  g.values[st.ccw_index] = st.pair_sum * part_ccw;
  g.values[st.cw_index] = st.pair_sum - g.values[st.ccw_index];
  return true;
}

class SectorRing : public SceneObject {
 public:
  explicit SectorRing(SectorRingShape g) : g_(std::move(g)) { pie_sweeps(g_.values); }

  const SectorRingShape& shape() const { return g_; }
  const std::optional<ResectorState>& resector() const { return state_; }

  std::string_view type_tag() const override { return "sectorring"; }
  Cover define_cover() const override {
    Cover cv = sector_ring_cover(g_);
    if (!movable())
      for (std::size_t i = 0; i < cv.size(); ++i)
        if (cv[i].behaviour() != NodeBehaviour::Transparent) cv.node(i).set_behaviour(NodeBehaviour::Frozen);
    return cv;
  }
  void move(double dx, double dy) override { g_.center = g_.center + Point2{dx, dy}; }
  std::optional<Rect> on_catch(int node, Point2 p, MouseButton button) override {
    state_.reset();
    const int first = g_.partition_first();
    if (button == MouseButton::Left && node >= first && node < first + static_cast<int>(g_.values.size()))
      state_ = start_resectoring(g_, node);
    if (button == MouseButton::Right) rotation_offset_ = p == g_.center ? 0.0 : g_.phase - ray_angle(g_.center, p);
    return std::nullopt;
  }
  void on_release(int, MouseButton) override { state_.reset(); }
  bool move_node(int node, double dx, double dy, Point2 pointer, MouseButton button) override {
    if (button == MouseButton::Right) {
      if (pointer == g_.center) return false;
      g_.phase = ray_angle(g_.center, pointer) + rotation_offset_;
      return true;
    }
    const int no = g_.outer_count();
    const int ni = g_.inner_count();
    const double r = distance(g_.center, pointer);
    if (node < no) {
      if (g_.r_inner + g_.min_width > r) return false;
      g_.r_outer = r;
      return true;
    }
    if (node < no + ni) {
      if (r < g_.min_inner || r + g_.min_width > g_.r_outer) return false;
      g_.r_inner = r;
      return true;
    }
    if (node < no + ni + static_cast<int>(g_.values.size())) {
      if (!state_) state_ = start_resectoring(g_, node);
      return resector_move(g_, *state_, pointer);
    }
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
    rec.put_reals(p + "values", g_.values);
    rec.put(p + "phase", g_.phase);
    rec.put_bool(p + "cw", g_.clockwise);
    rec.put(p + "minin", g_.min_inner);
    rec.put(p + "minwidth", g_.min_width);
  }
  static std::unique_ptr<SectorRing> load(const Record& rec) {
    SectorRingShape g{rec.point("center"), rec.real("rin"),    rec.real("rout"),     rec.reals("values"),
                      rec.real("phase"),   rec.boolean("cw"), rec.real("minin"), rec.real("minwidth")};
    auto o = std::make_unique<SectorRing>(std::move(g));
    o->load_common(rec, "");
    return o;
  }

 private:
  SectorRingShape g_;
  std::optional<ResectorState> state_;
  double rotation_offset_{0.0};
};

// ---------------------------------------------------------------------------
// Set of concentric rings

struct RingData {
  double r_inner;
  double r_outer;
  std::vector<double> values;
  double phase{0.0};
};

class RingSet : public SceneObject {
 public:
  RingSet(Point2 center, std::vector<RingData> rings, double min_inner = 10.0, double min_width = 10.0)
      : center_(center), rings_(std::move(rings)), min_inner_(min_inner), min_width_(min_width) {
    if (rings_.empty()) throw Error(ErrorCode::InvalidNode, "a ring set needs at least one ring");
    for (std::size_t k = 0; k < rings_.size(); ++k) {
      pie_sweeps(rings_[k].values);
      if (rings_[k].r_inner + min_width_ > rings_[k].r_outer || (k > 0 && rings_[k].r_inner < rings_[k - 1].r_outer))
        throw Error(ErrorCode::BadOrder, "rings must be concentric and non-overlapping");
    }
  }

  Point2 center() const { return center_; }
  const std::vector<RingData>& rings() const { return rings_; }
  std::vector<std::unique_ptr<RadialComment>>& comments() { return comments_; }
  const std::vector<std::unique_ptr<RadialComment>>& comments() const { return comments_; }
  std::optional<std::size_t> rotating_ring() const { return rotating_; }

  RadialGeometry geometry() const { return {center_, rings_.front().r_inner, rings_.back().r_outer, 0.0}; }

  RadialComment& add_comment(const std::string& text, Point2 p) {
    comments_.push_back(std::make_unique<RadialComment>(make_text(text, p), RadialMode::ToRing, geometry()));
    comments_.back()->set_parent_id(id());
    comments_.back()->set_visible_as_member(effectively_visible());
    return *comments_.back();
  }

  /// New rings are added only on the outside.
  void add_ring(double gap, double width, std::vector<double> values) {
    pie_sweeps(values);
    if (gap < 0.0 || width < min_width_) throw Error(ErrorCode::BadOrder, "new ring must lie outside the set");
    const double rin = rings_.back().r_outer + gap;
    rings_.push_back({rin, rin + width, std::move(values), 0.0});
    sync_comments();
  }

  /// Node index ranges: for each ring its inner then outer border nodes.
  struct BorderBlock {
    std::size_t ring;
    bool outer;
    int first;
    int count;
  };
  std::vector<BorderBlock> border_blocks() const {
    std::vector<BorderBlock> out;
    int at = 0;
    for (std::size_t k = 0; k < rings_.size(); ++k) {
      const int ni = perimeter_node_count(rings_[k].r_inner);
      out.push_back({k, false, at, ni});
      at += ni;
      const int no = perimeter_node_count(rings_[k].r_outer);
      out.push_back({k, true, at, no});
      at += no;
    }
    return out;
  }

  std::string_view type_tag() const override { return "ringset"; }
  Cover define_cover() const override {
    std::vector<CoverNode> nodes;
    for (const auto& r : rings_) {
      append_border_nodes(nodes, center_, r.r_inner);
      append_border_nodes(nodes, center_, r.r_outer);
    }
    const double hole = rings_.front().r_inner - kBorderNodeRadius;
    if (hole >= kMinNodeRadius) {
      auto h = CoverNode::circle(center_, hole, CursorHint::Default, NodeBehaviour::Transparent);
      h.set_clearance(false);
      nodes.push_back(h);
    }
    auto body = CoverNode::circle(center_, rings_.back().r_outer - kBorderNodeRadius + 1.0, CursorHint::SizeAll);
    body.set_clearance(false);
    nodes.push_back(body);
    for (auto& n : nodes) {
      n.set_clearance(false);
      if (!movable() && n.behaviour() != NodeBehaviour::Transparent) n.set_behaviour(NodeBehaviour::Frozen);
    }
    return Cover(std::move(nodes));
  }
  void move(double dx, double dy) override {
    center_ = center_ + Point2{dx, dy};
    for (auto& c : comments_) c->translate_with_parent(dx, dy);
  }
  std::optional<Rect> on_catch(int, Point2 p, MouseButton button) override {
    rotating_.reset();
    if (button != MouseButton::Right || p == center_) return std::nullopt;
    const double d = distance(center_, p);
    for (std::size_t k = 0; k < rings_.size(); ++k)
      if (rings_[k].r_inner <= d && d <= rings_[k].r_outer) {
        rotating_ = k;
        rotation_offset_ = rings_[k].phase - ray_angle(center_, p);
      }
    return std::nullopt;
  }
  void on_release(int, MouseButton) override { rotating_.reset(); }
  bool move_node(int node, double dx, double dy, Point2 pointer, MouseButton button) override {
    if (button == MouseButton::Right) {
      if (!rotating_ || pointer == center_) return false;
      rings_[*rotating_].phase = ray_angle(center_, pointer) + rotation_offset_;
      return true;
    }
    const double r = distance(center_, pointer);
    for (const auto& b : border_blocks()) {
      if (node < b.first || node >= b.first + b.count) continue;
      auto& ring = rings_[b.ring];
      if (b.outer) {
        const bool last = b.ring + 1 == rings_.size();
        if (r < ring.r_inner + min_width_ || (!last && r > rings_[b.ring + 1].r_inner)) return false;
        ring.r_outer = r;
      } else {
        const double floor = b.ring == 0 ? min_inner_ : rings_[b.ring - 1].r_outer;
        if (r < floor || r + min_width_ > ring.r_outer) return false;
        ring.r_inner = r;
      }
      sync_comments();
      return true;
    }
    move(dx, dy);
    return true;
  }
  Rect bounds() const override {
    const double r = rings_.back().r_outer;
    return {center_.x - r, center_.y - r, 2 * r, 2 * r};
  }
  Point2 reference_point() const override { return center_; }

  void set_visible(bool v) override {
    SceneObject::set_visible(v);
    cascade();
  }
  void set_visible_as_member(bool v) override {
    SceneObject::set_visible_as_member(v);
    cascade();
  }
  void into_mover(RegistrationQueue& queue, std::size_t pos) override {
    if (!effectively_visible()) return;
    queue.insert(pos, *this);
    for (auto& c : comments_) c->into_mover(queue, pos);
  }
  std::optional<PartPath> locate(ObjectId part) const override {
    for (std::size_t i = 0; i < comments_.size(); ++i)
      if (comments_[i]->id() == part) return PartPath{0, std::nullopt, std::nullopt, i, false};
    return std::nullopt;
  }

  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put_point(p + "center", center_);
    rec.put(p + "minin", min_inner_);
    rec.put(p + "minwidth", min_width_);
    rec.put_int(p + "nr", static_cast<long long>(rings_.size()));
    for (std::size_t k = 0; k < rings_.size(); ++k) {
      const std::string q = p + "r" + std::to_string(k) + ".";
      rec.put(q + "rin", rings_[k].r_inner);
      rec.put(q + "rout", rings_[k].r_outer);
      rec.put_reals(q + "values", rings_[k].values);
      rec.put(q + "phase", rings_[k].phase);
    }
    detail::save_comments(rec, p + "c", comments_);
  }
  static std::unique_ptr<RingSet> load(const Record& rec) {
    std::vector<RingData> rings;
    for (long long k = 0, n = rec.integer("nr"); k < n; ++k) {
      const std::string q = "r" + std::to_string(k) + ".";
      rings.push_back({rec.real(q + "rin"), rec.real(q + "rout"), rec.reals(q + "values"), rec.real(q + "phase")});
    }
    auto s = std::make_unique<RingSet>(rec.point("center"), std::move(rings), rec.real("minin"), rec.real("minwidth"));
    s->load_common(rec, "");
    for (long long i = 0, n = rec.integer("cn"); i < n; ++i) {
      s->comments_.push_back(RadialComment::load(rec, "c" + std::to_string(i) + ".", s->geometry()));
      s->comments_.back()->set_parent_id(s->id());
    }
    s->cascade();
    return s;
  }

 private:
  void cascade() {
    for (auto& c : comments_) c->set_visible_as_member(visible() && visible_as_member());
  }
  void sync_comments() {
    for (auto& c : comments_) c->sync(geometry());
  }

  Point2 center_;
  std::vector<RingData> rings_;
  double min_inner_;
  double min_width_;
  std::optional<std::size_t> rotating_;
  double rotation_offset_{0.0};
  std::vector<std::unique_ptr<RadialComment>> comments_;
};

}  // namespace movekit
