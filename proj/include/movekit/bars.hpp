#pragma once
/**
 * @file bars.hpp
 * @brief Bar charts: a plot-based chart turned by quarter turns, and a
 * primitive chart whose bars are changed by dragging their top sides.
 */

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "movekit/plot.hpp"

namespace movekit {

struct BarChartData {
  std::vector<std::vector<double>> values;  // [segment][set]
  double lo{0.0};
  double hi{1.0};
  double base_level{0.0};
  double fill_lo{0.1};
  double fill_hi{0.9};
  int orientation{0};  // quarter turns counterclockwise; 0 has bars growing up

  std::size_t segments() const { return values.size(); }
  std::size_t sets() const { return values.empty() ? 0 : values.front().size(); }
};

struct BarRect {
  std::size_t segment;
  std::size_t set;
  Rect rect;
};

/// Local (s along segments, t along values) to screen for the chart orientation.
inline Point2 bar_local_to_screen(const Rect& area, int orientation, double s, double t) {
  switch (((orientation % 4) + 4) % 4) {
    case 0: return {area.left + s, area.bottom() - t};
    case 1: return {area.right() - t, area.bottom() - s};
    case 2: return {area.right() - s, area.top + t};
    default: return {area.left + t, area.top + s};
  }
}

inline double bar_width(const BarChartData& b, const Rect& area) {
  if (!(b.fill_lo >= 0.0 && b.fill_lo < b.fill_hi && b.fill_hi <= 1.0))
    throw Error(ErrorCode::BadFill, "fill endpoints must satisfy 0 <= lo < hi <= 1");
  if (b.segments() == 0 || b.sets() == 0) throw Error(ErrorCode::BadFill, "bar chart needs segments and sets");
  const double seg_len = (b.orientation % 2 == 0 ? area.width : area.height) / static_cast<double>(b.segments());
  return std::floor((b.fill_hi - b.fill_lo) * seg_len / static_cast<double>(b.sets()));
}

/// Rectangles of all bars; each bar spans from the base level to its value.
inline std::vector<BarRect> bar_layout(const BarChartData& b, const Rect& area) {
  const double bw = bar_width(b, area);
  const bool even = b.orientation % 2 == 0;
  const double seg_len = (even ? area.width : area.height) / static_cast<double>(b.segments());
  const LinearMap vmap{0.0, even ? area.height : area.width, b.lo, b.hi};
  auto clamp_value = [&](double v) { return std::clamp(v, std::min(b.lo, b.hi), std::max(b.lo, b.hi)); };
  std::vector<BarRect> out;
  for (std::size_t i = 0; i < b.segments(); ++i) {
    for (std::size_t j = 0; j < b.sets(); ++j) {
      const double s0 = seg_len * static_cast<double>(i) + b.fill_lo * seg_len + bw * static_cast<double>(j);
      const double t0 = map_value(vmap, clamp_value(b.base_level));
      const double t1 = map_value(vmap, clamp_value(b.values[i][j]));
      const Point2 a = bar_local_to_screen(area, b.orientation, s0, t0);
      const Point2 c = bar_local_to_screen(area, b.orientation, s0 + bw, t1);
      out.push_back({i, j, Rect::spanning(a, c)});
    }
  }
  return out;
}

/// Bar chart on a plotting area: one numeric scale and one scale of segment names.
class BarChart : public Plot {
 public:
  BarChart(const Rect& area, BarChartData data) : Plot(area), data_(std::move(data)) {
    bar_width(data_, area_.rect);
    num_scale_ = &add_scale(ScaleDirection::Vertical, 4.0, data_.lo, data_.hi);
    text_scale_ = &add_scale(ScaleDirection::Horizontal, 4.0, 0.0, static_cast<double>(data_.segments()));
    const int turns = ((data_.orientation % 4) + 4) % 4;
    data_.orientation = 0;
    for (int k = 0; k < turns; ++k) rotate();
  }

  const BarChartData& data() const { return data_; }
  int orientation() const { return data_.orientation; }
  Scale& num_scale() { return *num_scale_; }
  Scale& text_scale() { return *text_scale_; }
  const Scale& num_scale() const { return *num_scale_; }
  const Scale& text_scale() const { return *text_scale_; }
  std::vector<BarRect> bars() const { return bar_layout(data_, area_.rect); }

  void set_fill(double lo, double hi) {
    BarChartData d = data_;
    d.fill_lo = lo;
    d.fill_hi = hi;
    bar_width(d, area_.rect);
    data_ = d;
  }

  /// Quarter turn; the area stays, the scales change sides.
  void rotate() {
    data_.orientation = (data_.orientation + 1) % 4;
    for (Scale* s : {num_scale_, text_scale_}) {
      const ScaleDirection to =
          s->direction() == ScaleDirection::Horizontal ? ScaleDirection::Vertical : ScaleDirection::Horizontal;
      auto& from_list = s->direction() == ScaleDirection::Horizontal ? h_ : v_;
      auto& to_list = to == ScaleDirection::Horizontal ? h_ : v_;
      auto it = std::find_if(from_list.begin(), from_list.end(), [s](const auto& p) { return p.get() == s; });
      auto owned = std::move(*it);
      from_list.erase(it);
      owned->set_direction(to, area_.rect);
      to_list.push_back(std::move(owned));
    }
  }

  std::string_view type_tag() const override { return "barchart"; }

  void save(Record& rec, const std::string& p) const override {
    Plot::save(rec, p);
    rec.put_int(p + "nseg", static_cast<long long>(data_.segments()));
    for (std::size_t i = 0; i < data_.segments(); ++i) rec.put_reals(p + "b" + std::to_string(i), data_.values[i]);
    rec.put(p + "lo", data_.lo);
    rec.put(p + "hi", data_.hi);
    rec.put(p + "base", data_.base_level);
    rec.put(p + "flo", data_.fill_lo);
    rec.put(p + "fhi", data_.fill_hi);
    rec.put_int(p + "orient", data_.orientation);
    rec.put_int(p + "numdir", num_scale_->direction() == ScaleDirection::Horizontal ? 0 : 1);
  }
  static std::unique_ptr<BarChart> load(const Record& rec) {
    BarChartData d;
    for (long long i = 0, n = rec.integer("nseg"); i < n; ++i) d.values.push_back(rec.reals("b" + std::to_string(i)));
    d.lo = rec.real("lo");
    d.hi = rec.real("hi");
    d.base_level = rec.real("base");
    d.fill_lo = rec.real("flo");
    d.fill_hi = rec.real("fhi");
    d.orientation = static_cast<int>(rec.integer("orient"));
    auto b = std::unique_ptr<BarChart>(new BarChart(rec.rect("area"), std::move(d), LoadTag{}));
    b->load_parts(rec);
    // numeric scale is the first scale of its direction list, the text scale the first of the other
    const bool num_h = rec.integer("numdir") == 0;
    if (b->h_.empty() || b->v_.empty()) throw Error(ErrorCode::Parse, "bar chart needs both scales");
    b->num_scale_ = num_h ? b->h_.front().get() : b->v_.front().get();
    b->text_scale_ = num_h ? b->v_.front().get() : b->h_.front().get();
    return b;
  }

 private:
  struct LoadTag {};
  BarChart(const Rect& area, BarChartData data, LoadTag) : Plot(area), data_(std::move(data)) {
    bar_width(data_, area_.rect);
  }

  BarChartData data_;
  Scale* num_scale_{nullptr};
  Scale* text_scale_{nullptr};
};

inline void bar_chart_rotate(BarChart& b) { b.rotate(); }

// ---------------------------------------------------------------------------
// Bars changed by their top sides

/// Top y of a bar filled to `fill` inside its maximal rectangle.
inline double bar_top(const Rect& track, double fill) {
  return map_value(LinearMap{track.top, track.bottom(), 1.0, 0.0}, fill);
}

class SingleBar : public SceneObject {
 public:
  SingleBar(const Rect& track, double fill) : track_(track), fill_(std::clamp(fill, 0.0, 1.0)) {}

  const Rect& track() const { return track_; }
  double fill() const { return fill_; }
  double top() const { return bar_top(track_, fill_); }
  void set_track(const Rect& t) { track_ = t; }

  /// Top strip first; the transparent body lets presses reach the chart beneath.
  std::string_view type_tag() const override { return "singlebar"; }
  Cover define_cover() const override {
    const double cy = top();
    std::vector<CoverNode> nodes{
        CoverNode::rect({track_.left, cy - kStripHalfWidth, track_.width, 2 * kStripHalfWidth}, CursorHint::SizeNS),
        CoverNode::rect({track_.left, cy, track_.width, std::max(2.0, track_.bottom() - cy)}, CursorHint::Default,
                        NodeBehaviour::Transparent),
    };
    if (!movable()) nodes[0].set_behaviour(NodeBehaviour::Frozen);
    return Cover(std::move(nodes));
  }
  void move(double dx, double dy) override { track_ = track_.translated(dx, dy); }
  bool move_node(int node, double, double dy, Point2, MouseButton button) override {
    if (button != MouseButton::Left || node != 0) return false;
    return move_top(dy);
  }
  bool move_top(double dy) {
    const double cy = top() + dy;
    if (!(track_.top <= cy && cy <= track_.bottom())) return false;
    fill_ = unmap(LinearMap{track_.top, track_.bottom(), 1.0, 0.0}, cy);
    return true;
  }
  Rect bounds() const override { return Rect::from_ltrb(track_.left, top(), track_.right(), track_.bottom()); }
  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put(p + "fill", fill_);
  }

 private:
  Rect track_;
  double fill_;
};

inline bool single_bar_move(SingleBar& b, double dy) { return b.move_top(dy); }

class PrimitiveBarChart : public SceneObject {
 public:
  PrimitiveBarChart(const Rect& frame, const std::vector<double>& fills)
      : frame_{frame, {kPlotMinSide, kPlotMinSide, 1.0e6, 1.0e6}} {
    for (double f : fills) {
      bars_.push_back(std::make_unique<SingleBar>(Rect{}, f));
      bars_.back()->set_parent_id(id());
    }
    layout();
  }

  const ResizableRect& frame() const { return frame_; }
  std::vector<std::unique_ptr<SingleBar>>& bars() { return bars_; }
  const std::vector<std::unique_ptr<SingleBar>>& bars() const { return bars_; }

  /// Bars share the frame width equally with a fifth of each slot left on both sides.
  Rect track_of(std::size_t i) const {
    const Rect& f = frame_.rect;
    const double slot = f.width / static_cast<double>(std::max<std::size_t>(1, bars_.size()));
    return {f.left + slot * static_cast<double>(i) + slot * 0.2, f.top, slot * 0.6, f.height};
  }

  std::string_view type_tag() const override { return "primitivebars"; }
  Cover define_cover() const override { return rect_cover(frame_, movable()); }
  void move(double dx, double dy) override {
    frame_.rect = frame_.rect.translated(dx, dy);
    for (auto& b : bars_) b->move(dx, dy);
  }
  bool move_node(int node, double dx, double dy, Point2, MouseButton button) override {
    if (button != MouseButton::Left) return false;
    if (node == rect_node::kBody) {
      move(dx, dy);
      return true;
    }
    const bool ok = rect_move_node(frame_, node, dx, dy);
    if (ok) layout();
    return ok;
  }
  Rect bounds() const override { return frame_.rect; }

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
    for (auto it = bars_.rbegin(); it != bars_.rend(); ++it) (*it)->into_mover(queue, pos);
  }
  std::optional<PartPath> locate(ObjectId part) const override {
    for (std::size_t i = 0; i < bars_.size(); ++i)
      if (bars_[i]->id() == part) return PartPath{0, std::nullopt, std::nullopt, i, false};
    return std::nullopt;
  }

  void save(Record& rec, const std::string& p) const override {
    save_common(rec, p);
    rec.put_rect(p + "frame", frame_.rect);
    std::vector<double> fills;
    for (const auto& b : bars_) fills.push_back(b->fill());
    rec.put_reals(p + "fills", fills);
  }
  static std::unique_ptr<PrimitiveBarChart> load(const Record& rec) {
    auto c = std::make_unique<PrimitiveBarChart>(rec.rect("frame"), rec.reals("fills"));
    c->load_common(rec, "");
    c->cascade();
    return c;
  }

 private:
  void layout() {
    for (std::size_t i = 0; i < bars_.size(); ++i) bars_[i]->set_track(track_of(i));
  }
  void cascade() {
    for (auto& b : bars_) b->set_visible_as_member(visible() && visible_as_member());
  }

  ResizableRect frame_;
  std::vector<std::unique_ptr<SingleBar>> bars_;
};

}  // namespace movekit
