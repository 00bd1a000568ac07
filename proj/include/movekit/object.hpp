#pragma once
/**
 * @file object.hpp
 * @brief The contract every movable object fulfils for a mover.
 *
 * An object supplies its cover, translates itself, and reacts to the
 * movement of one caught node. Complex objects register each individually
 * movable part in a mover queue through into_mover().
 */

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "movekit/cover.hpp"
#include "movekit/record.hpp"

namespace movekit {

enum class MouseButton { Left, Right };

using ObjectId = std::uint64_t;

/// Process-wide monotone id source; ids are never reused.
inline ObjectId issue_object_id() {
  static std::atomic<ObjectId> counter{0};
  return ++counter;
}

class SceneObject;

enum class ScaleDirection { Horizontal, Vertical };

/// Chain of list indices from a top-level object down to one of its parts.
struct PartPath {
  std::size_t owner_index{0};
  std::optional<ScaleDirection> scale_kind;
  std::optional<std::size_t> scale_index;
  std::optional<std::size_t> comment_index;
  bool helper{false};
  bool operator==(const PartPath&) const = default;
};

/// Anything that keeps an ordered queue of registered objects.
class RegistrationQueue {
 public:
  virtual ~RegistrationQueue() = default;
  virtual void insert(std::size_t pos, SceneObject& obj) = 0;
};

class SceneObject {
 public:
  virtual ~SceneObject() = default;
  SceneObject(const SceneObject&) = delete;
  SceneObject& operator=(const SceneObject&) = delete;

  ObjectId id() const { return id_; }
  std::optional<ObjectId> parent_id() const { return parent_id_; }
  void set_parent_id(std::optional<ObjectId> p) { parent_id_ = p; }

  bool visible() const { return visible_; }
  bool visible_as_member() const { return visible_as_member_; }
  bool effectively_visible() const { return visible_ && visible_as_member_; }
  virtual void set_visible(bool v) { visible_ = v; }
  virtual void set_visible_as_member(bool v) { visible_as_member_ = v; }

  bool movable() const { return movable_; }
  virtual void set_movable(bool m) { movable_ = m; }

  virtual std::string_view type_tag() const = 0;
  virtual Cover define_cover() const = 0;

  /// Rigid translation of the whole object.
  virtual void move(double dx, double dy) = 0;

  /// Reaction to the movement of a caught node; returns whether it was accepted.
  virtual bool move_node(int node, double dx, double dy, Point2 pointer, MouseButton button) = 0;

  /// Called when a node is caught; may return a tighter pointer clip for the drag.
  virtual std::optional<Rect> on_catch(int /*node*/, Point2 /*pointer*/, MouseButton /*button*/) {
    return std::nullopt;
  }
  virtual void on_release(int /*node*/, MouseButton /*button*/) {}

  virtual Rect bounds() const = 0;

  /// Point used to place a restored copy: top-left for rectangles, center for round shapes.
  virtual Point2 reference_point() const { return bounds().top_left(); }

  virtual void into_mover(RegistrationQueue& queue, std::size_t pos) {
    if (effectively_visible()) queue.insert(pos, *this);
  }

  /// Path to the part with the given id, when that part belongs to this object.
  virtual std::optional<PartPath> locate(ObjectId /*part*/) const { return std::nullopt; }

  virtual void save(Record& r, const std::string& prefix) const = 0;

  Record to_record() const {
    Record r{std::string(type_tag())};
    save(r, "");
    return r;
  }

 protected:
  SceneObject() : id_(issue_object_id()) {}

  void save_common(Record& r, const std::string& prefix) const {
    r.put_int(prefix + "id", static_cast<long long>(id_));
    if (parent_id_) r.put_int(prefix + "parent", static_cast<long long>(*parent_id_));
    r.put_bool(prefix + "visible", visible_);
    r.put_bool(prefix + "vam", visible_as_member_);
    r.put_bool(prefix + "movable", movable_);
  }

  void load_common(const Record& r, const std::string& prefix) {
    visible_ = r.boolean_or(prefix + "visible", true);
    visible_as_member_ = r.boolean_or(prefix + "vam", true);
    movable_ = r.boolean_or(prefix + "movable", true);
  }

 private:
  ObjectId id_;
  std::optional<ObjectId> parent_id_;
  bool visible_{true};
  bool visible_as_member_{true};
  bool movable_{true};
};

}  // namespace movekit
