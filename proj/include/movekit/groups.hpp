#pragma once
/**
 * @file groups.hpp
 * @brief Elastic frames around member objects and rubber-band selection.
 *
 * A frame is always the bounding box of its members inflated by the margin.
 * Members precede the frame in a mover queue, so pressing a member moves the
 * member and pressing the free space of the frame moves the whole group.
 */

#include <algorithm>
#include <cstdio>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "movekit/object.hpp"

namespace movekit {

inline constexpr double kGroupMargin = 10.0;
inline constexpr double kSelectionTransparency = 0.2;

class ElasticFrame : public SceneObject {
 public:
  explicit ElasticFrame(std::vector<SceneObject*> members, double margin = kGroupMargin,
                        bool recompute_on_release = true)
      : members_(std::move(members)), margin_(margin), recompute_on_release_(recompute_on_release) {
    if (members_.empty()) throw Error(ErrorCode::EmptyGroup, "a group needs members");
    update_frame();
  }

  static std::unique_ptr<ElasticFrame> load(const Record& rec, std::vector<SceneObject*> members) {
    if (members.empty()) rec.fail("group without members");
    auto g = std::make_unique<ElasticFrame>(std::move(members), rec.real("margin"), rec.boolean_or("recompute", true));
    g->load_common(rec, "");
    g->set_transparency(rec.real_or("transp", kSelectionTransparency));
    g->set_selection(rec.boolean_or("sel", false));
    const std::string bg = rec.has("bg") ? rec.raw("bg") : "FFFFFF";
    unsigned v = 0;
    if (bg.size() != 6 || std::sscanf(bg.c_str(), "%6x", &v) != 1) rec.fail("bad colour in bg");
    g->background_ = Color{static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>((v >> 8) & 0xFF),
                           static_cast<std::uint8_t>(v & 0xFF)};
    return g;
  }

  const std::vector<SceneObject*>& members() const { return members_; }
  double margin() const { return margin_; }
  const Rect& frame() const { return frame_; }
  double transparency() const { return transparency_; }
  void set_transparency(double t) { transparency_ = std::clamp(t, 0.0, 1.0); }
  Color background() const { return background_; }
  void set_background(Color c) { background_ = c; }
  bool recompute_on_release() const { return recompute_on_release_; }
  /// The temporary group made by a rubber band.
  bool selection() const { return selection_; }
  void set_selection(bool s) { selection_ = s; }
  bool contains_member(const SceneObject* o) const {
    return std::find(members_.begin(), members_.end(), o) != members_.end();
  }

  void set_members(std::vector<SceneObject*> m) {
    members_ = std::move(m);
    if (!members_.empty()) update_frame();
  }

  /// Bounding box of the members plus the margin.
  void update_frame() {
    Rect r = members_.front()->bounds();
    for (const SceneObject* m : members_) r = bounding_union(r, m->bounds());
    frame_ = r.inflated(margin_);
  }

  std::string_view type_tag() const override { return "group"; }
  Cover define_cover() const override {
    return Cover({CoverNode::rect(frame_, CursorHint::SizeAll, movable() ? NodeBehaviour::Moveable : NodeBehaviour::Frozen)});
  }
  void move(double dx, double dy) override {
    for (SceneObject* m : members_) m->move(dx, dy);
    frame_ = frame_.translated(dx, dy);
  }
  bool move_node(int, double dx, double dy, Point2, MouseButton button) override {
    if (button != MouseButton::Left) return false;
    move(dx, dy);
    return true;
  }
  Rect bounds() const override { return frame_; }
  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put(p + "margin", margin_);
    rec.put(p + "transp", transparency_);
    rec.put_raw(p + "bg", background_.hex().substr(1));
    rec.put_bool(p + "recompute", recompute_on_release_);
    rec.put_bool(p + "sel", selection_);
  }

 private:
  std::vector<SceneObject*> members_;
  double margin_;
  bool recompute_on_release_;
  bool selection_{false};
  double transparency_{kSelectionTransparency};
  Color background_{Color::white()};
  Rect frame_;
};

/// Axis-aligned box of the press point and the current pointer.
struct SelectionBand {
  Point2 anchor;
  Point2 current;
  Rect rect() const { return Rect::spanning(anchor, current); }
};

/// Objects whose whole bounds lie in the rectangle.
inline std::vector<SceneObject*> objects_inside(const Rect& r, std::span<SceneObject* const> candidates) {
  std::vector<SceneObject*> out;
  for (SceneObject* o : candidates)
    if (o->effectively_visible() && r.contains(o->bounds())) out.push_back(o);
  return out;
}

/// Members for a new group, when at least two objects are fully inside the band.
inline std::optional<std::vector<SceneObject*>> band_commit(const SelectionBand& band,
                                                            std::span<SceneObject* const> candidates) {
  auto inside = objects_inside(band.rect(), candidates);
  if (inside.size() < 2) return std::nullopt;
  return inside;
}

inline void group_move(ElasticFrame& g, double dx, double dy) { g.move(dx, dy); }

/// Membership becomes everything inside the current frame; returns false when
/// fewer than two remain and the group must be dissolved.
inline bool group_recompute_on_release(ElasticFrame& g, std::span<SceneObject* const> candidates) {
  g.update_frame();
  std::vector<SceneObject*> pool;
  for (SceneObject* o : candidates)
    if (o != &g) pool.push_back(o);
  for (std::size_t round = 0; round <= pool.size(); ++round) {
    auto inside = objects_inside(g.frame(), pool);
    for (SceneObject* m : g.members())
      if (std::find(inside.begin(), inside.end(), m) == inside.end()) inside.push_back(m);
    std::vector<SceneObject*> ordered;
    for (SceneObject* o : pool)
      if (std::find(inside.begin(), inside.end(), o) != inside.end()) ordered.push_back(o);
    const bool same = ordered.size() == g.members().size();
    g.set_members(std::move(ordered));
    if (same) break;
  }
  return g.members().size() >= 2;
}

/// Index right behind the member found first when scanning the queue from its end.
inline std::size_t group_queue_position(const ElasticFrame& g, std::span<SceneObject* const> queue) {
  for (std::size_t i = queue.size(); i-- > 0;)
    if (g.contains_member(queue[i])) return i + 1;
  throw Error(ErrorCode::EmptyGroup, "no member of the group is in the queue");
}

}  // namespace movekit
