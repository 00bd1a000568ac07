#pragma once
/**
 * @file mover.hpp
 * @brief The press - move - release state machine over a queue of objects.
 *
 * The queue is scanned from index 0: the first object whose cover yields a
 * hit is caught, a nonmoveable node stops the scan, transparent nodes let the
 * scan continue into deeper nodes and deeper objects.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "movekit/object.hpp"

namespace movekit {

enum class ClippingMode { Unsafe, Visual, Safe };

// Safe clipping lets the pointer leave the work-area this far past its right and bottom edges.
inline constexpr double kSafeClipExtent = 4000.0;

// Press-release pairs not farther apart than this are clicks.
inline constexpr double kClickDistance = 3.0;

enum class ClickKind { Click, Drag };

inline ClickKind classify_release(Point2 down, Point2 up) {
  return distance(down, up) <= kClickDistance ? ClickKind::Click : ClickKind::Drag;
}

struct Registration {
  SceneObject* object;
  Cover cover;
  Color color;
};

struct DragInfo {
  std::size_t queue_index{0};
  SceneObject* object{nullptr};
  int node_ordinal{0};
  ShapeKind shape_kind{ShapeKind::Circle};
  NodeBehaviour behaviour{NodeBehaviour::Moveable};
  MouseButton button{MouseButton::Left};
  Point2 last_point;
};

struct ReleaseResult {
  bool released{false};
  std::size_t queue_index{0};
  int node_ordinal{0};
  ShapeKind shape_kind{ShapeKind::Circle};
  SceneObject* object{nullptr};
};

struct Sensed {
  std::size_t queue_index{0};
  SceneObject* object{nullptr};
  HitInfo hit;
  bool catchable{true};
};

class Mover : public RegistrationQueue {
 public:
  Mover() = default;
  explicit Mover(Rect work_area) : work_area_(work_area), clipping_(ClippingMode::Visual) {}

  // -- queue ---------------------------------------------------------------

  void add(SceneObject& obj) { insert(queue_.size(), obj); }

  void insert(std::size_t pos, SceneObject& obj) override {
    if (pos > queue_.size()) throw Error(ErrorCode::BadIndex, "insert position past the queue end");
    if (index_of(obj)) throw Error(ErrorCode::Duplicate, "object already registered");
    queue_.insert(queue_.begin() + static_cast<std::ptrdiff_t>(pos),
                  Registration{&obj, obj.define_cover(), color_});
    if (caught_ && caught_->queue_index >= pos) ++caught_->queue_index;
  }

  void remove(std::size_t pos) {
    if (pos >= queue_.size()) throw Error(ErrorCode::BadIndex, "remove position out of range");
    queue_.erase(queue_.begin() + static_cast<std::ptrdiff_t>(pos));
    if (caught_) {
      if (caught_->queue_index == pos) {
        caught_.reset();
        clip_.reset();
      } else if (caught_->queue_index > pos) {
        --caught_->queue_index;
      }
    }
  }

  void clear() {
    queue_.clear();
    caught_.reset();
    was_caught_.reset();
    clip_.reset();
  }

  std::size_t size() const { return queue_.size(); }
  const Registration& operator[](std::size_t i) const { return queue_.at(i); }
  const std::vector<Registration>& queue() const { return queue_; }

  std::optional<std::size_t> index_of(const SceneObject& obj) const {
    for (std::size_t i = 0; i < queue_.size(); ++i)
      if (queue_[i].object == &obj) return i;
    return std::nullopt;
  }

  /// Re-reads every registered cover from its object.
  void refresh_covers() {
    for (auto& reg : queue_) reg.cover = reg.object->define_cover();
  }

  // -- configuration -------------------------------------------------------

  ClippingMode clipping() const { return clipping_; }
  void set_clipping(ClippingMode mode) { clipping_ = mode; }
  const std::optional<Rect>& work_area() const { return work_area_; }
  void set_work_area(std::optional<Rect> area) { work_area_ = area; }
  Color color() const { return color_; }
  void set_color(Color c) { color_ = c; }

  // -- interaction ---------------------------------------------------------

  bool catch_at(Point2 p, MouseButton button) {
    if (caught_) release();
    press_point_ = p;
    last_clamped_ = p;
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      const auto hit = cover_hit(queue_[i].cover, p);
      if (hit.outcome == HitOutcome::Miss) continue;
      if (hit.outcome == HitOutcome::Blocked) return false;
      SceneObject* obj = queue_[i].object;
      caught_ = DragInfo{i, obj, hit.info.node_ordinal, hit.info.shape_kind, hit.info.behaviour, button, p};
      was_caught_.reset();
      cursor_ = hit.info.cursor;
      clip_ = base_clip();
      if (auto tighter = obj->on_catch(hit.info.node_ordinal, p, button)) clip_ = tighter;
      return true;
    }
    return false;
  }

  /// Returns true whenever an object is caught, whether or not it accepted the movement.
  bool move(Point2 p) {
    if (!caught_) {
      const auto s = sensed(p);
      cursor_ = s ? s->hit.cursor : CursorHint::Default;
      return false;
    }
    const Point2 q = clip_ ? clip_->clamp(p) : p;
    last_clamped_ = q;
    if (caught_->behaviour == NodeBehaviour::Frozen) return true;
    const double dx = q.x - caught_->last_point.x;
    const double dy = q.y - caught_->last_point.y;
    if (caught_->object->move_node(caught_->node_ordinal, dx, dy, q, caught_->button)) {
      caught_->last_point = q;
      refresh_covers();
      last_move_accepted_ = true;
    } else {
      last_move_accepted_ = false;
    }
    return true;
  }

  ReleaseResult release() {
    clip_.reset();
    if (!caught_) return {};
    const DragInfo c = *caught_;
    caught_.reset();
    was_caught_ = c;
    c.object->on_release(c.node_ordinal, c.button);
    refresh_covers();
    return {true, c.queue_index, c.node_ordinal, c.shape_kind, c.object};
  }

  /// Releases the current drag and catches again at p in one step.
  bool transfer(Point2 p, MouseButton button) {
    release();
    return catch_at(p, button);
  }

  std::optional<Sensed> sensed(Point2 p) const {
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      const auto hit = cover_hit(queue_[i].cover, p);
      if (hit.outcome == HitOutcome::Miss) continue;
      return Sensed{i, queue_[i].object, hit.info, hit.outcome == HitOutcome::Hit};
    }
    return std::nullopt;
  }

  // -- state ---------------------------------------------------------------

  bool is_dragging() const { return caught_.has_value(); }
  const std::optional<DragInfo>& caught() const { return caught_; }
  const std::optional<DragInfo>& was_caught() const { return was_caught_; }
  const std::optional<Rect>& clip_region() const { return clip_; }
  /// Replaces the pointer clip for the current drag; ignored when idle.
  void set_clip_region(std::optional<Rect> r) {
    if (caught_) clip_ = r;
  }
  Point2 press_point() const { return press_point_; }
  Point2 last_clamped() const { return last_clamped_; }
  bool last_move_accepted() const { return last_move_accepted_; }
  CursorHint cursor() const { return cursor_; }

 private:
  std::optional<Rect> base_clip() const {
    if (!work_area_) return std::nullopt;
    switch (clipping_) {
      case ClippingMode::Unsafe: return std::nullopt;
      case ClippingMode::Visual: return work_area_;
      case ClippingMode::Safe:
        return Rect{work_area_->left, work_area_->top, work_area_->width + kSafeClipExtent,
                    work_area_->height + kSafeClipExtent};
    }
    return std::nullopt;
  }

  std::vector<Registration> queue_;
  std::optional<Rect> work_area_;
  ClippingMode clipping_{ClippingMode::Unsafe};
  Color color_{Color::red()};
  std::optional<DragInfo> caught_;
  std::optional<DragInfo> was_caught_;
  std::optional<Rect> clip_;
  Point2 press_point_;
  Point2 last_clamped_;
  bool last_move_accepted_{false};
  CursorHint cursor_{CursorHint::Default};
};

// -- several movers over one surface ----------------------------------------

enum class PointerKind { Down, Move, Up };

struct PointerEvent {
  PointerKind kind{PointerKind::Move};
  Point2 point;
  MouseButton button{MouseButton::Left};
};

struct CooperateResult {
  std::optional<std::size_t> handler;  // index of the mover that took the event
  bool result{false};
  CursorHint cursor{CursorHint::Default};
};

/// Dispatches one pointer event over an ordered list of movers: the first
/// mover to catch wins the press, a dragging or sensing mover owns the move,
/// and the release goes to everybody.
inline CooperateResult cooperate(std::span<Mover* const> movers, const PointerEvent& e) {
  if (movers.empty()) throw Error(ErrorCode::BadIndex, "no movers to cooperate");
  CooperateResult out;
  switch (e.kind) {
    case PointerKind::Down:
      for (std::size_t i = 0; i < movers.size(); ++i) {
        if (movers[i]->catch_at(e.point, e.button)) {
          out.handler = i;
          out.result = true;
          out.cursor = movers[i]->cursor();
          return out;
        }
      }
      return out;
    case PointerKind::Move:
      for (std::size_t i = 0; i < movers.size(); ++i) {
        if (movers[i]->is_dragging()) {
          out.handler = i;
          out.result = movers[i]->move(e.point);
          out.cursor = movers[i]->cursor();
          return out;
        }
      }
      for (std::size_t i = 0; i < movers.size(); ++i) {
        if (movers[i]->sensed(e.point)) {
          movers[i]->move(e.point);
          out.handler = i;
          out.cursor = movers[i]->cursor();
          return out;
        }
      }
      return out;
    case PointerKind::Up:
      for (std::size_t i = 0; i < movers.size(); ++i) {
        if (movers[i]->release().released && !out.handler) {
          out.handler = i;
          out.result = true;
        }
      }
      return out;
  }
  return out;
}

}  // namespace movekit
