#pragma once
/**
 * @file scene.hpp
 * @brief An ordered set of top-level objects driven by one mover.
 *
 * The scene turns pointer events into mover calls the way a form would:
 * press catches, move drags, release frees and classifies the gesture.
 * Presses on empty space draw a selection band; a released band with two or
 * more objects fully inside becomes the selection group.
 */

#include <algorithm>
#include <memory>
#include <optional>
#include <vector>

#include "movekit/charts.hpp"
#include "movekit/editors.hpp"
#include "movekit/groups.hpp"
#include "movekit/mover.hpp"
#include "movekit/shapes.hpp"

namespace movekit {

struct GestureResult {
  ClickKind kind{ClickKind::Drag};
  MouseButton button{MouseButton::Left};
  SceneObject* object{nullptr};
  int node_ordinal{-1};
};

struct TuningRequest {
  Point2 point;
  SceneObject* object{nullptr};
};

class Scene {
 public:
  Scene() = default;
  Scene(const Scene&) = delete;
  Scene& operator=(const Scene&) = delete;
  Scene(Scene&&) = default;
  Scene& operator=(Scene&&) = default;

  std::size_t size() const { return objects_.size(); }
  bool empty() const { return objects_.empty(); }
  SceneObject& at(std::size_t i) const { return *objects_.at(i); }
  std::vector<SceneObject*> objects() const {
    std::vector<SceneObject*> out;
    for (const auto& o : objects_) out.push_back(o.get());
    return out;
  }
  std::optional<std::size_t> index_of(const SceneObject* o) const {
    for (std::size_t i = 0; i < objects_.size(); ++i)
      if (objects_[i].get() == o) return i;
    return std::nullopt;
  }

  Mover& mover() { return mover_; }
  const Mover& mover() const { return mover_; }

  template <class T>
  T& add(std::unique_ptr<T> obj) {
    T& ref = *obj;
    objects_.push_back(std::move(obj));
    rebuild_mover();
    return ref;
  }

  /// Inserts without touching the mover; call rebuild_mover() afterwards.
  void insert_raw(std::size_t pos, std::unique_ptr<SceneObject> obj) {
    objects_.insert(objects_.begin() + static_cast<std::ptrdiff_t>(std::min(pos, objects_.size())), std::move(obj));
  }

  /// Removes a top-level object; groups losing it shrink or dissolve.
  void remove(std::size_t i) {
    SceneObject* gone = objects_.at(i).get();
    objects_.erase(objects_.begin() + static_cast<std::ptrdiff_t>(i));
    for (ElasticFrame* g : groups()) {
      if (!g->contains_member(gone)) continue;
      std::vector<SceneObject*> rest;
      for (SceneObject* m : g->members())
        if (m != gone) rest.push_back(m);
      if (rest.size() < 2)
        dissolve(*g);
      else
        g->set_members(std::move(rest));
    }
    rebuild_mover();
  }

  std::vector<ElasticFrame*> groups() const {
    std::vector<ElasticFrame*> out;
    for (const auto& o : objects_)
      if (auto* g = dynamic_cast<ElasticFrame*>(o.get())) out.push_back(g);
    return out;
  }

  ElasticFrame* selection_group() const {
    for (ElasticFrame* g : groups())
      if (g->selection()) return g;
    return nullptr;
  }

  /// Objects that may join groups: everything except the groups themselves.
  std::vector<SceneObject*> group_candidates() const {
    std::vector<SceneObject*> out;
    for (const auto& o : objects_)
      if (!dynamic_cast<ElasticFrame*>(o.get())) out.push_back(o.get());
    return out;
  }

  /// Creates a group placed right behind its deepest member.
  ElasticFrame& make_group(std::vector<SceneObject*> members, bool selection) {
    auto g = std::make_unique<ElasticFrame>(std::move(members), kGroupMargin, true);
    g->set_selection(selection);
    if (selection) g->set_transparency(kSelectionTransparency);
    ElasticFrame& ref = *g;
    objects_.push_back(std::move(g));
    place_behind_members(ref);
    rebuild_mover();
    return ref;
  }

  void dissolve(ElasticFrame& g) {
    if (auto i = index_of(&g)) objects_.erase(objects_.begin() + static_cast<std::ptrdiff_t>(*i));
  }

  /// Re-registers every visible object in scene order.
  void rebuild_mover() {
    mover_.clear();
    for (const auto& o : objects_) o->into_mover(mover_, mover_.size());
  }

  const std::optional<SelectionBand>& band() const { return band_; }
  const std::vector<TuningRequest>& tuning_requests() const { return tuning_; }
  const std::optional<GestureResult>& last_gesture() const { return last_gesture_; }

  // --- pointer protocol ------------------------------------------------------

  void press(Point2 p, MouseButton button) {
    band_.reset();
    press_button_ = button;
    if (mover_.catch_at(p, button)) {
      const auto& c = mover_.caught();
      if (button == MouseButton::Left && c && c->shape_kind == ShapeKind::Strip)
        if (auto* g = dynamic_cast<GraphDots*>(c->object)) graphdots_insert_on_strip(*g, mover_, p);
      return;
    }
    if (button == MouseButton::Left && !mover_.sensed(p)) band_ = SelectionBand{p, p};
  }

  void drag(Point2 p) {
    if (band_) {
      band_->current = p;
      return;
    }
    const bool dragging = mover_.is_dragging();
    mover_.move(p);
    if (dragging && mover_.last_move_accepted()) {
      for (ElasticFrame* g : groups()) g->update_frame();
      mover_.refresh_covers();
    }
  }

  GestureResult release(Point2 p, MouseButton button) {
    GestureResult out;
    out.button = button;
    out.kind = classify_release(mover_.press_point(), p);
    if (band_) {
      band_->current = p;
      commit_band();
      band_.reset();
      last_gesture_ = out;
      return out;
    }
    const ReleaseResult r = mover_.release();
    if (r.released) {
      out.object = r.object;
      out.node_ordinal = r.node_ordinal;
      if (auto* nest = dynamic_cast<DotNest*>(r.object); nest && r.node_ordinal == 0) drop_patch(*nest, p);
      recompute_groups();
      rebuild_mover();
    }
    last_gesture_ = out;
    return out;
  }

  void double_click(Point2 p) {
    const auto s = mover_.sensed(p);
    tuning_.push_back({p, s ? s->object : nullptr});
  }

 private:
  void commit_band() {
    ElasticFrame* old = selection_group();
    const auto members = band_commit(*band_, group_candidates());
    if (old) dissolve(*old);
    if (members) {
      make_group(*members, true);
    } else {
      rebuild_mover();
    }
  }

  void drop_patch(DotNest& nest, Point2 at) {
    for (const auto& o : objects_) {
      auto* g = dynamic_cast<GraphDots*>(o.get());
      if (!g || !g->effectively_visible()) continue;
      if (auto pt = dotnest_release(nest, at, g->plot_area())) {
        g->insert_in_x_order(*pt);
        return;
      }
    }
    nest.return_home();
  }

  void recompute_groups() {
    for (ElasticFrame* g : groups()) {
      if (!g->recompute_on_release()) {
        g->update_frame();
        continue;
      }
      if (!group_recompute_on_release(*g, group_candidates())) {
        dissolve(*g);
        continue;
      }
      place_behind_members(*g);
    }
  }

  void place_behind_members(ElasticFrame& g) {
    const auto self = index_of(&g);
    if (!self) return;
    std::unique_ptr<SceneObject> held = std::move(objects_[*self]);
    objects_.erase(objects_.begin() + static_cast<std::ptrdiff_t>(*self));
    std::vector<SceneObject*> order;
    for (const auto& o : objects_) order.push_back(o.get());
    const std::size_t pos = group_queue_position(g, order);
    objects_.insert(objects_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(held));
  }

  std::vector<std::unique_ptr<SceneObject>> objects_;
  Mover mover_;
  std::optional<SelectionBand> band_;
  MouseButton press_button_{MouseButton::Left};
  std::vector<TuningRequest> tuning_;
  std::optional<GestureResult> last_gesture_;
};

}  // namespace movekit
