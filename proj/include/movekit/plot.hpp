#pragma once
/**
 * @file plot.hpp
 * @brief Plotting area with scales, anchored comments and a corner helper.
 *
 * A plot registers its parts individually: the corner helper goes first so
 * the area stays resizable even when a scale band lies over its border,
 * then the scales (each preceded by its own comments), the plot comments,
 * and the area itself.
 */

#include <memory>
#include <span>
#include <vector>

#include "movekit/shapes.hpp"

namespace movekit {

/// Text positioned inside or around a rectangle by normalized coefficients of its center.
class RectComment : public TextObject {
 public:
  RectComment(TextRM t, const Rect& parent) : TextObject(std::move(t)) { attach(parent); }

  double u() const { return u_; }
  double v() const { return v_; }
  const Rect& parent_rect() const { return parent_; }

  /// Takes the current center as the placement relative to parent.
  void attach(const Rect& parent) {
    parent_ = parent;
    const Point2 c = center();
    u_ = parent.width != 0.0 ? (c.x - parent.left) / parent.width : 0.0;
    v_ = parent.height != 0.0 ? (c.y - parent.top) / parent.height : 0.0;
  }

  /// Repositions after the parent changed its size.
  void sync(const Rect& parent) {
    parent_ = parent;
    place_center({parent.left + u_ * parent.width, parent.top + v_ * parent.height});
  }

  /// Rigid movement together with the parent.
  void translate_with_parent(double dx, double dy) {
    TextObject::move(dx, dy);
    parent_ = parent_.translated(dx, dy);
  }

  std::string_view type_tag() const override { return "rectcomment"; }
  void move(double dx, double dy) override {
    TextObject::move(dx, dy);
    attach(parent_);
  }

  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    save_text(rec, p);
  }
  static std::unique_ptr<RectComment> load(const Record& rec, const std::string& p, const Rect& parent) {
    auto c = std::make_unique<RectComment>(load_text(rec, p), parent);
    c->load_common(rec, p);
    return c;
  }

 private:
  Rect parent_;
  double u_{0.0};
  double v_{0.0};
};

inline constexpr double kScaleThickness = 30.0;

/// A scale band along one side of a plotting area; it moves only athwart its main line.
class Scale : public SceneObject {
 public:
  /// gap is the outward distance from the area's bottom (horizontal) or left (vertical) side.
  Scale(ScaleDirection dir, const Rect& area, double gap = 4.0, double lo = 0.0, double hi = 1.0,
        double thickness = kScaleThickness)
      : dir_(dir), gap_(gap), thickness_(thickness), lo_(lo), hi_(hi) {
    place(area);
  }

  ScaleDirection direction() const { return dir_; }
  const Rect& band() const { return band_; }
  double gap() const { return gap_; }
  double low() const { return lo_; }
  double high() const { return hi_; }
  std::vector<std::unique_ptr<RectComment>>& comments() { return comments_; }
  const std::vector<std::unique_ptr<RectComment>>& comments() const { return comments_; }

  RectComment& add_comment(const std::string& text, Point2 center) {
    comments_.push_back(std::make_unique<RectComment>(make_text(text, center), band_));
    comments_.back()->set_parent_id(id());
    comments_.back()->set_visible_as_member(effectively_visible());
    return *comments_.back();
  }

  /// Length follows the matching area side; the gap is kept.
  void place(const Rect& area) {
    if (dir_ == ScaleDirection::Horizontal)
      band_ = {area.left, area.bottom() + gap_, area.width, thickness_};
    else
      band_ = {area.left - gap_ - thickness_, area.top, thickness_, area.height};
    for (auto& c : comments_) c->sync(band_);
  }

  void set_direction(ScaleDirection dir, const Rect& area) {
    dir_ = dir;
    place(area);
  }

  std::string_view type_tag() const override { return "scale"; }
  Cover define_cover() const override {
    Cover cv({CoverNode::rect(band_, dir_ == ScaleDirection::Horizontal ? CursorHint::SizeNS : CursorHint::SizeWE)});
    cv = set_clearance(std::move(cv), false);
    if (!movable()) cv = set_node_behaviour_cursor(std::move(cv), 0, NodeBehaviour::Frozen, CursorHint::Hand);
    return cv;
  }
  void move(double dx, double dy) override {
    band_ = band_.translated(dx, dy);
    for (auto& c : comments_) c->translate_with_parent(dx, dy);
  }
  bool move_node(int, double dx, double dy, Point2, MouseButton button) override {
    if (button != MouseButton::Left) return false;
    if (dir_ == ScaleDirection::Horizontal) {
      gap_ += dy;
      move(0.0, dy);
    } else {
      gap_ -= dx;
      move(dx, 0.0);
    }
    return true;
  }
  Rect bounds() const override { return band_; }

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

  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put_int(p + "dir", dir_ == ScaleDirection::Horizontal ? 0 : 1);
    rec.put(p + "gap", gap_);
    rec.put(p + "thick", thickness_);
    rec.put(p + "lo", lo_);
    rec.put(p + "hi", hi_);
    rec.put_int(p + "nc", static_cast<long long>(comments_.size()));
    for (std::size_t i = 0; i < comments_.size(); ++i) comments_[i]->save(rec, p + "c" + std::to_string(i) + ".");
  }
  static std::unique_ptr<Scale> load(const Record& rec, const std::string& p, const Rect& area) {
    auto s = std::make_unique<Scale>(rec.integer(p + "dir") == 0 ? ScaleDirection::Horizontal : ScaleDirection::Vertical,
                                     area, rec.real(p + "gap"), rec.real(p + "lo"), rec.real(p + "hi"),
                                     rec.real(p + "thick"));
    s->load_common(rec, p);
    const auto n = rec.integer(p + "nc");
    for (long long i = 0; i < n; ++i) {
      s->comments_.push_back(RectComment::load(rec, p + "c" + std::to_string(i) + ".", s->band_));
      s->comments_.back()->set_parent_id(s->id());
    }
    s->cascade();
    return s;
  }

 private:
  void cascade() {
    for (auto& c : comments_) c->set_visible_as_member(visible() && visible_as_member());
  }

  ScaleDirection dir_;
  double gap_;
  double thickness_;
  double lo_;
  double hi_;
  Rect band_;
  std::vector<std::unique_ptr<RectComment>> comments_;
};

class Plot;

/// Four corner circles duplicating the corner nodes of a plot's area.
class RectCorners : public SceneObject {
 public:
  explicit RectCorners(Plot& owner) : owner_(&owner) {}

  std::string_view type_tag() const override { return "rectcorners"; }
  Cover define_cover() const override;
  void move(double, double) override {}
  bool move_node(int node, double dx, double dy, Point2, MouseButton button) override;
  Rect bounds() const override;
  void save(Record&, const std::string&) const override {}

 private:
  Plot* owner_;
};

inline constexpr double kPlotMinSide = 40.0;

class Plot : public SceneObject {
 public:
  explicit Plot(const Rect& area) : area_{area, {kPlotMinSide, kPlotMinSide, 1.0e6, 1.0e6}} {
    corners_ = std::make_unique<RectCorners>(*this);
    corners_->set_parent_id(id());
  }

  const ResizableRect& area() const { return area_; }
  const Rect& area_rect() const { return area_.rect; }
  RectCorners& corner_helper() { return *corners_; }
  const RectCorners& corner_helper() const { return *corners_; }
  std::vector<std::unique_ptr<Scale>>& h_scales() { return h_; }
  std::vector<std::unique_ptr<Scale>>& v_scales() { return v_; }
  const std::vector<std::unique_ptr<Scale>>& h_scales() const { return h_; }
  const std::vector<std::unique_ptr<Scale>>& v_scales() const { return v_; }
  std::vector<std::unique_ptr<RectComment>>& comments() { return comments_; }
  const std::vector<std::unique_ptr<RectComment>>& comments() const { return comments_; }

  Scale& add_scale(ScaleDirection dir, double gap = 4.0, double lo = 0.0, double hi = 1.0) {
    auto& list = dir == ScaleDirection::Horizontal ? h_ : v_;
    list.push_back(std::make_unique<Scale>(dir, area_.rect, gap, lo, hi));
    list.back()->set_parent_id(id());
    list.back()->set_visible_as_member(effectively_visible());
    return *list.back();
  }

  RectComment& add_comment(const std::string& text, Point2 center) {
    comments_.push_back(std::make_unique<RectComment>(make_text(text, center), area_.rect));
    comments_.back()->set_parent_id(id());
    comments_.back()->set_visible_as_member(effectively_visible());
    return *comments_.back();
  }

  /// Resize through the helper: same rules as the area's own corner nodes.
  bool corner_helper_resize(int corner, double dx, double dy) {
    if (corner < 0 || corner > 3) return false;
    const bool ok = rect_move_node(area_, corner, dx, dy);
    if (ok) area_changed();
    return ok;
  }

  std::string_view type_tag() const override { return "plot"; }
  Cover define_cover() const override { return rect_cover(area_, movable()); }
  void move(double dx, double dy) override {
    area_.rect = area_.rect.translated(dx, dy);
    for (auto& s : h_) s->move(dx, dy);
    for (auto& s : v_) s->move(dx, dy);
    for (auto& c : comments_) c->translate_with_parent(dx, dy);
  }
  bool move_node(int node, double dx, double dy, Point2, MouseButton button) override {
    if (button != MouseButton::Left) return false;
    if (node == rect_node::kBody) {
      move(dx, dy);
      return true;
    }
    const bool ok = rect_move_node(area_, node, dx, dy);
    if (ok) area_changed();
    return ok;
  }
  Rect bounds() const override { return area_.rect; }

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
    for (auto& s : h_) s->into_mover(queue, pos);
    for (auto& s : v_) s->into_mover(queue, pos);
    corners_->into_mover(queue, pos);
  }

  std::optional<PartPath> locate(ObjectId part) const override {
    if (corners_->id() == part) return PartPath{0, std::nullopt, std::nullopt, std::nullopt, true};
    for (std::size_t i = 0; i < comments_.size(); ++i)
      if (comments_[i]->id() == part) return PartPath{0, std::nullopt, std::nullopt, i, false};
    auto scan = [&](const std::vector<std::unique_ptr<Scale>>& list, ScaleDirection dir) -> std::optional<PartPath> {
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (list[i]->id() == part) return PartPath{0, dir, i, std::nullopt, false};
        const auto& cs = list[i]->comments();
        for (std::size_t k = 0; k < cs.size(); ++k)
          if (cs[k]->id() == part) return PartPath{0, dir, i, k, false};
      }
      return std::nullopt;
    };
    if (auto p = scan(h_, ScaleDirection::Horizontal)) return p;
    return scan(v_, ScaleDirection::Vertical);
  }

  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put_rect(p + "area", area_.rect);
    rec.put_int(p + "nh", static_cast<long long>(h_.size()));
    for (std::size_t i = 0; i < h_.size(); ++i) h_[i]->save(rec, p + "h" + std::to_string(i) + ".");
    rec.put_int(p + "nv", static_cast<long long>(v_.size()));
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i]->save(rec, p + "v" + std::to_string(i) + ".");
    rec.put_int(p + "nc", static_cast<long long>(comments_.size()));
    for (std::size_t i = 0; i < comments_.size(); ++i) comments_[i]->save(rec, p + "c" + std::to_string(i) + ".");
  }
  static std::unique_ptr<Plot> load(const Record& rec) {
    auto plot = std::make_unique<Plot>(rec.rect("area"));
    plot->load_parts(rec);
    return plot;
  }

 protected:
  void load_parts(const Record& rec) {
    load_common(rec, "");
    for (long long i = 0, n = rec.integer("nh"); i < n; ++i) {
      h_.push_back(Scale::load(rec, "h" + std::to_string(i) + ".", area_.rect));
      h_.back()->set_parent_id(id());
    }
    for (long long i = 0, n = rec.integer("nv"); i < n; ++i) {
      v_.push_back(Scale::load(rec, "v" + std::to_string(i) + ".", area_.rect));
      v_.back()->set_parent_id(id());
    }
    for (long long i = 0, n = rec.integer("nc"); i < n; ++i) {
      comments_.push_back(RectComment::load(rec, "c" + std::to_string(i) + ".", area_.rect));
      comments_.back()->set_parent_id(id());
    }
    cascade();
  }

  virtual void area_changed() {
    for (auto& s : h_) s->place(area_.rect);
    for (auto& s : v_) s->place(area_.rect);
    for (auto& c : comments_) c->sync(area_.rect);
  }

  void cascade() {
    const bool m = visible() && visible_as_member();
    for (auto& s : h_) s->set_visible_as_member(m);
    for (auto& s : v_) s->set_visible_as_member(m);
    for (auto& c : comments_) c->set_visible_as_member(m);
    corners_->set_visible_as_member(m);
  }

  ResizableRect area_;
  std::vector<std::unique_ptr<Scale>> h_;
  std::vector<std::unique_ptr<Scale>> v_;
  std::vector<std::unique_ptr<RectComment>> comments_;
  std::unique_ptr<RectCorners> corners_;
};

inline Cover RectCorners::define_cover() const {
  const auto c = owner_->area_rect().corners();
  return Cover({
      CoverNode::circle(c[0], kCornerRadius, CursorHint::SizeNWSE),
      CoverNode::circle(c[1], kCornerRadius, CursorHint::SizeNESW),
      CoverNode::circle(c[2], kCornerRadius, CursorHint::SizeNWSE),
      CoverNode::circle(c[3], kCornerRadius, CursorHint::SizeNESW),
  });
}

inline bool RectCorners::move_node(int node, double dx, double dy, Point2, MouseButton button) {
  if (button != MouseButton::Left) return false;
  return owner_->corner_helper_resize(node, dx, dy);
}

inline Rect RectCorners::bounds() const { return owner_->area_rect().inflated(kCornerRadius); }

/// Registers a plot's parts at pos.
inline void plot_into_mover(Plot& p, RegistrationQueue& queue, std::size_t pos) { p.into_mover(queue, pos); }

/// Ownership path of a hit object among the top-level objects.
inline PartPath identify(std::span<SceneObject* const> owners, const SceneObject& hit) {
  for (std::size_t i = 0; i < owners.size(); ++i) {
    if (owners[i]->id() == hit.id()) return PartPath{i, std::nullopt, std::nullopt, std::nullopt, false};
    if (auto path = owners[i]->locate(hit.id())) {
      path->owner_index = i;
      return *path;
    }
  }
  throw Error(ErrorCode::UnknownOwner, "object " + std::to_string(hit.id()) + " has no known owner");
}

}  // namespace movekit
