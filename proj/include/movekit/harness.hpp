#pragma once
/**
 * @file harness.hpp
 * @brief Headless driving of a scene: event scripts, hit maps, cover
 * drawings and randomized invariant runs.
 *
 * Script lines (blank lines and lines starting with '#' are skipped):
 *
 *   down X Y L|R        press
 *   move X Y            pointer move
 *   up X Y L|R          release
 *   dblclick X Y        double click
 *   assert-pos I X Y    reference point of scene object I equals (X, Y)
 *   assert-eq PATH V    field of a saved object; PATH is "I.key"
 *   snapshot NAME       keeps the current snapshot under NAME
 */

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "movekit/persist.hpp"

namespace movekit {

struct ScriptCommand {
  enum class Kind { Down, Move, Up, DblClick, AssertPos, AssertEq, Snapshot };
  Kind kind{Kind::Move};
  int line{0};
  int x{0};
  int y{0};
  MouseButton button{MouseButton::Left};
  std::size_t index{0};
  std::string path;
  std::string value;
};

using EventScript = std::vector<ScriptCommand>;

inline std::string to_line(const ScriptCommand& c) {
  const auto xy = std::to_string(c.x) + " " + std::to_string(c.y);
  const char* b = c.button == MouseButton::Left ? " L" : " R";
  switch (c.kind) {
    case ScriptCommand::Kind::Down: return "down " + xy + b;
    case ScriptCommand::Kind::Move: return "move " + xy;
    case ScriptCommand::Kind::Up: return "up " + xy + b;
    case ScriptCommand::Kind::DblClick: return "dblclick " + xy;
    case ScriptCommand::Kind::AssertPos: return "assert-pos " + std::to_string(c.index) + " " + xy;
    case ScriptCommand::Kind::AssertEq: return "assert-eq " + c.path + " " + c.value;
    case ScriptCommand::Kind::Snapshot: return "snapshot " + c.value;
  }
  return {};
}

inline std::string script_text(const EventScript& s) {
  std::string out;
  for (const auto& c : s) out += to_line(c) + "\n";
  return out;
}

inline EventScript parse_script(const std::string& text) {
  EventScript out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ls(raw);
    std::vector<std::string> w;
    for (std::string t; ls >> t;) w.push_back(t);
    if (w.empty() || w[0][0] == '#') continue;
    auto fail = [&](const std::string& msg) -> void {
      throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
    };
    auto integer = [&](const std::string& s) {
      int v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || p != s.data() + s.size()) fail("expected an integer, got '" + s + "'");
      return v;
    };
    auto button = [&](const std::string& s) {
      if (s == "L") return MouseButton::Left;
      if (s == "R") return MouseButton::Right;
      fail("expected L or R, got '" + s + "'");
      return MouseButton::Left;
    };
    auto arity = [&](std::size_t n) {
      if (w.size() != n) fail("'" + w[0] + "' takes " + std::to_string(n - 1) + " arguments");
    };
    ScriptCommand c;
    c.line = line;
    const std::string& cmd = w[0];
    if (cmd == "down" || cmd == "up") {
      arity(4);
      c.kind = cmd == "down" ? ScriptCommand::Kind::Down : ScriptCommand::Kind::Up;
      c.x = integer(w[1]);
      c.y = integer(w[2]);
      c.button = button(w[3]);
    } else if (cmd == "move" || cmd == "dblclick") {
      arity(3);
      c.kind = cmd == "move" ? ScriptCommand::Kind::Move : ScriptCommand::Kind::DblClick;
      c.x = integer(w[1]);
      c.y = integer(w[2]);
    } else if (cmd == "assert-pos") {
      arity(4);
      c.kind = ScriptCommand::Kind::AssertPos;
      const int i = integer(w[1]);
      if (i < 0) fail("object index must not be negative");
      c.index = static_cast<std::size_t>(i);
      c.x = integer(w[2]);
      c.y = integer(w[3]);
    } else if (cmd == "assert-eq") {
      arity(3);
      c.kind = ScriptCommand::Kind::AssertEq;
      c.path = w[1];
      c.value = w[2];
      if (c.path.find('.') == std::string::npos) fail("path must look like INDEX.key");
    } else if (cmd == "snapshot") {
      arity(2);
      c.kind = ScriptCommand::Kind::Snapshot;
      c.value = w[1];
    } else {
      fail("unknown command '" + cmd + "'");
    }
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Invariants checked after every event of a randomized run

namespace detail {

inline bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline bool rect_inside(const Rect& outer, const Rect& inner, double tol = 1e-9) {
  return inner.left >= outer.left - tol && inner.top >= outer.top - tol && inner.right() <= outer.right() + tol &&
         inner.bottom() <= outer.bottom() + tol;
}

inline std::optional<std::string> check_sweeps(const std::vector<double>& sweeps, double min_sweep, const std::string& who) {
  double sum = 0.0;
  for (double s : sweeps) {
    sum += std::fabs(s);
    if (std::fabs(s) < min_sweep - 1e-12) return who + ": sector sweep below the minimum";
  }
  if (!sweeps.empty() && !near(sum, kTwoPi, 1e-9)) return who + ": sweeps do not add up to a full turn";
  return std::nullopt;
}

}  // namespace detail

/// First broken invariant of the scene, if any.
inline std::optional<std::string> check_invariants(const Scene& scene) {
  const Mover& mover = scene.mover();
  for (std::size_t i = 0; i < mover.size(); ++i)
    if (!mover[i].object->effectively_visible())
      return "queue entry " + std::to_string(i) + " (" + std::string(mover[i].object->type_tag()) + ") is not visible";
  if (mover.is_dragging() && mover.clip_region() && !mover.clip_region()->contains(mover.last_clamped()))
    return std::string("clamped pointer outside the clip region");

  int selections = 0;
  for (std::size_t i = 0; i < scene.size(); ++i) {
    const SceneObject& o = scene.at(i);
    const std::string who = "object " + std::to_string(i) + " (" + std::string(o.type_tag()) + ")";
    if (auto* r = dynamic_cast<const RectObject*>(&o)) {
      const auto& s = r->shape();
      if (s.rect.width < s.limits.min_width - 1e-9 || s.rect.width > s.limits.max_width + 1e-9 ||
          s.rect.height < s.limits.min_height - 1e-9 || s.rect.height > s.limits.max_height + 1e-9)
        return who + ": size outside its limits";
    } else if (auto* os = dynamic_cast<const OneSideRectObject*>(&o)) {
      const auto& s = os->shape();
      if (s.slider < s.track.top - 1e-9 || s.slider > s.track.bottom() + 1e-9) return who + ": slider left its track";
    } else if (auto* c = dynamic_cast<const CircleObject*>(&o)) {
      if (c->shape().radius < c->shape().min_radius - 1e-9) return who + ": radius below the minimum";
    } else if (auto* rg = dynamic_cast<const RingObject*>(&o)) {
      const auto& g = rg->shape();
      if (g.r_inner < g.min_inner - 1e-9 || g.r_outer - g.r_inner < g.min_width - 1e-9) return who + ": ring too thin";
    } else if (auto* pie = dynamic_cast<const PieChart*>(&o)) {
      if (auto e = detail::check_sweeps(pie->sweeps(), 0.0, who)) return e;
      if (pie->circle().radius < pie->circle().min_radius - 1e-9) return who + ": radius below the minimum";
    } else if (auto* sr = dynamic_cast<const SectorRing*>(&o)) {
      if (auto e = detail::check_sweeps(sr->shape().sweeps(), kMinSectorAngle, who)) return e;
      const auto& g = sr->shape();
      if (g.r_inner < g.min_inner - 1e-9 || g.r_outer - g.r_inner < g.min_width - 1e-9) return who + ": ring too thin";
    } else if (auto* rs = dynamic_cast<const RingSet*>(&o)) {
      const auto& rings = rs->rings();
      for (std::size_t k = 0; k < rings.size(); ++k) {
        if (rings[k].r_inner >= rings[k].r_outer) return who + ": ring turned inside out";
        if (k > 0 && rings[k].r_inner < rings[k - 1].r_outer - 1e-9) return who + ": rings overlap";
      }
    } else if (auto* plot = dynamic_cast<const Plot*>(&o)) {
      const Rect& a = plot->area_rect();
      if (a.width < kPlotMinSide - 1e-9 || a.height < kPlotMinSide - 1e-9) return who + ": plot area too small";
    } else if (auto* gd = dynamic_cast<const GraphDots*>(&o)) {
      const auto& pts = gd->points();
      for (std::size_t k = 1; k < pts.size(); ++k)
        if (pts[k].x < pts[k - 1].x) return who + ": dot arguments decrease";
    } else if (auto* ss = dynamic_cast<const SegmentedSliders*>(&o)) {
      const auto& lx = ss->line_xs();
      for (std::size_t k = 1; k < lx.size(); ++k)
        if (!(lx[k - 1] < lx[k])) return who + ": slider lines out of order";
      const bool held = mover.is_dragging() && mover.caught()->object == ss;
      if (!held)
        for (std::size_t k = 1; k + 1 < lx.size(); ++k) {
          bool on_data = false;
          for (std::size_t d = 0; d < ss->xs().size(); ++d) on_data |= detail::near(ss->screen_x(d), lx[k], 1e-9);
          if (!on_data) return who + ": idle slider off the data";
        }
    } else if (auto* nest = dynamic_cast<const DotNest*>(&o)) {
      const bool held = mover.is_dragging() && mover.caught()->object == nest;
      if (!held && !(nest->patch_point() == nest->nest_point())) return who + ": idle patch away from its nest";
    } else if (auto* g = dynamic_cast<const ElasticFrame*>(&o)) {
      if (g->selection()) ++selections;
      Rect box = g->members().front()->bounds();
      for (const SceneObject* m : g->members()) {
        box = bounding_union(box, m->bounds());
        const auto mi = scene.index_of(m);
        if (!mi || *mi > i) return who + ": member does not precede the group";
      }
      const Rect want = box.inflated(g->margin());
      if (!detail::rect_inside(g->frame(), want, 1e-6) || !detail::rect_inside(want, g->frame(), 1e-6))
        return who + ": frame is not the inflated member box";
    }
  }
  if (selections > 1) return std::string("more than one selection group");
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Replay

struct ReplayOptions {
  bool check_invariants{false};
};

struct ReplayReport {
  std::vector<std::string> failures;
  std::vector<std::pair<std::string, std::string>> snapshots;
  std::optional<std::string> violation;
  std::size_t violation_step{0};
  std::size_t executed{0};
  bool ok() const { return failures.empty() && !violation; }
};

namespace detail {

inline std::optional<double> as_number(const std::string& s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::string fmt_point(Point2 p) { return "(" + format_real(p.x) + ", " + format_real(p.y) + ")"; }

}  // namespace detail

/// Applies one pointer command to the scene.
inline void apply_event(Scene& scene, const ScriptCommand& c) {
  const Point2 p{static_cast<double>(c.x), static_cast<double>(c.y)};
  switch (c.kind) {
    case ScriptCommand::Kind::Down: scene.press(p, c.button); break;
    case ScriptCommand::Kind::Move: scene.drag(p); break;
    case ScriptCommand::Kind::Up: scene.release(p, c.button); break;
    case ScriptCommand::Kind::DblClick: scene.double_click(p); break;
    default: break;
  }
}

inline ReplayReport replay(Scene& scene, const EventScript& script, ReplayOptions opt = {}) {
  ReplayReport rep;
  for (const auto& c : script) {
    const std::string where = "line " + std::to_string(c.line) + ": ";
    switch (c.kind) {
      case ScriptCommand::Kind::AssertPos: {
        if (c.index >= scene.size()) {
          rep.failures.push_back(where + "assert-pos: no object " + std::to_string(c.index));
          break;
        }
        const Point2 got = scene.at(c.index).reference_point();
        const Point2 want{static_cast<double>(c.x), static_cast<double>(c.y)};
        if (!detail::near(got.x, want.x, 1e-6) || !detail::near(got.y, want.y, 1e-6))
          rep.failures.push_back(where + "assert-pos " + std::to_string(c.index) + ": expected " +
                                 detail::fmt_point(want) + ", got " + detail::fmt_point(got));
        break;
      }
      case ScriptCommand::Kind::AssertEq: {
        const auto dot = c.path.find('.');
        const auto idx = detail::as_number(c.path.substr(0, dot));
        if (!idx || *idx < 0 || static_cast<std::size_t>(*idx) >= scene.size()) {
          rep.failures.push_back(where + "assert-eq: no object for '" + c.path + "'");
          break;
        }
        const Record rec = scene_record(scene, static_cast<std::size_t>(*idx));
        const std::string key = c.path.substr(dot + 1);
        if (!rec.has(key)) {
          rep.failures.push_back(where + "assert-eq: no field '" + c.path + "'");
          break;
        }
        const std::string& got = rec.raw(key);
        const auto gn = detail::as_number(got), wn = detail::as_number(c.value);
        const bool same = (gn && wn) ? detail::near(*gn, *wn, 1e-6) : got == c.value;
        if (!same) rep.failures.push_back(where + "assert-eq " + c.path + ": expected " + c.value + ", got " + got);
        break;
      }
      case ScriptCommand::Kind::Snapshot: rep.snapshots.emplace_back(c.value, save_scene(scene)); break;
      default: apply_event(scene, c);
    }
    ++rep.executed;
    if (opt.check_invariants) {
      if (auto v = check_invariants(scene)) {
        rep.violation = where + *v;
        rep.violation_step = rep.executed;
        return rep;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Hit maps

struct HitCell {
  enum class Kind { None, Hit, Blocked };
  Kind kind{Kind::None};
  std::size_t queue_index{0};
  int node{0};
  bool operator==(const HitCell&) const = default;
};

struct HitMap {
  Rect region;
  int width{0};
  int height{0};
  std::vector<HitCell> cells;
  const HitCell& at(int col, int row) const { return cells[static_cast<std::size_t>(row) * width + col]; }
};

inline constexpr int kMaxHitmapSide = 4096;

/// What a press would catch at every integer point of the region, without catching.
inline HitMap hitmap(const Mover& mover, int x0, int y0, int w, int h) {
  if (w <= 0 || h <= 0 || w > kMaxHitmapSide || h > kMaxHitmapSide)
    throw Error(ErrorCode::BadBounds, "hit map region must be within 4096 x 4096");
  HitMap m{{double(x0), double(y0), double(w), double(h)}, w, h, {}};
  m.cells.reserve(static_cast<std::size_t>(w) * h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      const auto s = mover.sensed({double(x0 + c), double(y0 + r)});
      if (!s) {
        m.cells.push_back({});
        continue;
      }
      m.cells.push_back({s->catchable ? HitCell::Kind::Hit : HitCell::Kind::Blocked, s->queue_index, s->hit.node_ordinal});
    }
  return m;
}

/// One row per line; '.' for nothing, "Q:N" for a catch, "!Q:N" for a block.
inline std::string hitmap_text(const HitMap& m) {
  std::string out = "hitmap " + std::to_string(int(m.region.left)) + " " + std::to_string(int(m.region.top)) + " " +
                    std::to_string(m.width) + " " + std::to_string(m.height) + "\n";
  for (int r = 0; r < m.height; ++r) {
    for (int c = 0; c < m.width; ++c) {
      const HitCell& cell = m.at(c, r);
      if (c) out += ' ';
      if (cell.kind == HitCell::Kind::None) {
        out += '.';
        continue;
      }
      if (cell.kind == HitCell::Kind::Blocked) out += '!';
      out += std::to_string(cell.queue_index) + ":" + std::to_string(cell.node);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cover drawing: covers from the queue tail to its head, nodes of each cover
// from last to first, outlines in the mover's colour, white interiors where
// clearance is set.

inline std::string render_covers(const Mover& mover) {
  std::string out = "covers v1\n";
  for (std::size_t q = mover.size(); q-- > 0;) {
    const Registration& reg = mover[q];
    const auto& nodes = reg.cover.nodes();
    for (std::size_t k = nodes.size(); k-- > 0;) {
      const CoverNode& n = nodes[k];
      std::string line = "q=" + std::to_string(q) + " n=" + std::to_string(k) + " ";
      std::visit(
          [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, CircleShape>) {
              line += "circle " + format_real(s.center.x) + " " + format_real(s.center.y) + " " + format_real(s.radius);
            } else if constexpr (std::is_same_v<S, StripShape>) {
              line += "strip " + format_real(s.segment.a.x) + " " + format_real(s.segment.a.y) + " " +
                      format_real(s.segment.b.x) + " " + format_real(s.segment.b.y) + " " + format_real(s.radius);
            } else {
              line += "polygon " + std::to_string(s.vertices.size());
              for (const auto& v : s.vertices) line += " " + format_real(v.x) + " " + format_real(v.y);
            }
          },
          n.shape());
      line += " stroke=" + reg.color.hex() + " fill=" + (n.clearance() ? n.fill_color().hex() : std::string("none"));
      out += line + "\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Default scene and randomized runs

/// A mixed scene touching every family of objects.
inline Scene default_scene() {
  Scene s;
  s.add(std::make_unique<RectObject>(ResizableRect{{20, 20, 120, 80}, {}}));
  s.add(std::make_unique<CircleObject>(CircleNR{{220, 70}, 45, 20}));
  s.add(std::make_unique<RingObject>(RingShape{{360, 70}, 25, 55, 10, 10}));
  auto pie = std::make_unique<PieChart>(CircleNR{{520, 90}, 70, 30}, std::vector<double>{3, 5, 2, 4});
  pie->add_default_sector_comments();
  pie->add_circle_comment("Pie", {520, 185});
  s.add(std::move(pie));
  s.add(std::make_unique<SectorRing>(SectorRingShape{{680, 90}, 35, 70, {2, 3, 1, 4}, 0.3, false, 10, 10}));
  BarChartData bars;
  bars.values = {{3, 5}, {4, 2}, {6, 1}};
  bars.lo = 0;
  bars.hi = 8;
  auto chart = std::make_unique<BarChart>(Rect{60, 240, 220, 140}, std::move(bars));
  chart->add_comment("Bars", {170, 225});
  s.add(std::move(chart));
  auto plot = std::make_unique<Plot>(Rect{360, 240, 200, 140});
  plot->add_scale(ScaleDirection::Horizontal);
  plot->add_scale(ScaleDirection::Vertical);
  plot->add_comment("Plot", {460, 225});
  s.add(std::move(plot));
  s.add(std::make_unique<TextObject>(make_text("movekit", {680, 250})));
  s.add(std::make_unique<GraphDots>(Rect{60, 430, 260, 130},
                                    std::vector<Point2>{{70, 540}, {130, 470}, {200, 510}, {300, 450}}, 0, 10, 0, 5));
  s.add(std::make_unique<DotNest>(Rect{330, 430, 30, 30}));
  auto sliders = std::make_unique<SegmentedSliders>(Rect{400, 430, 260, 130},
                                                    std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
                                                    std::vector<double>(11, 0.0), 0, 10);
  sliders->add_slider_at_point(3);
  sliders->add_slider_at_point(7);
  s.add(std::move(sliders));
  s.add(std::make_unique<OneSideRectObject>(OneSideRect{{700, 430, 30, 130}, 480}));
  return s;
}

struct FuzzReport {
  std::uint64_t seed{0};
  std::size_t steps{0};
  std::optional<std::string> violation;
  std::size_t violation_step{0};
  std::string initial_scene;
  EventScript script;
};

/// Random gestures over the scene; invariants are checked after every event.
inline FuzzReport fuzz(Scene& scene, std::uint64_t seed, std::size_t steps) {
  FuzzReport rep;
  rep.seed = seed;
  rep.initial_scene = save_scene(scene);
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto chance = [&](double p) { return uniform(0.0, 1.0) < p; };
  Rect area{0, 0, 800, 600};
  if (!scene.empty()) {
    area = scene.at(0).bounds();
    for (std::size_t i = 1; i < scene.size(); ++i) area = bounding_union(area, scene.at(i).bounds());
    area = area.inflated(40);
  }
  auto pt = [](double x, double y) { return std::pair<int, int>{int(std::lround(x)), int(std::lround(y))}; };

  std::vector<ScriptCommand> gesture;
  auto emit = [&](ScriptCommand c) -> bool {
    c.line = static_cast<int>(rep.script.size() + 1);
    rep.script.push_back(c);
    apply_event(scene, c);
    ++rep.steps;
    if (auto v = check_invariants(scene)) {
      rep.violation = "line " + std::to_string(c.line) + ": " + *v;
      rep.violation_step = rep.steps;
      return false;
    }
    return true;
  };
  auto pointer = [&](ScriptCommand::Kind k, std::pair<int, int> p, MouseButton b = MouseButton::Left) {
    ScriptCommand c;
    c.kind = k;
    c.x = p.first;
    c.y = p.second;
    c.button = b;
    return c;
  };

  while (rep.steps < steps) {
    const Mover& mover = scene.mover();
    std::pair<int, int> start;
    if (mover.size() > 0 && chance(0.85)) {
      const auto& reg = mover[std::uniform_int_distribution<std::size_t>(0, mover.size() - 1)(rng)];
      const auto& nodes = reg.cover.nodes();
      const CoverNode& n = nodes[std::uniform_int_distribution<std::size_t>(0, nodes.size() - 1)(rng)];
      Point2 c{};
      double spread = 4.0;
      std::visit(
          [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, CircleShape>) {
              c = s.center;
              spread = s.radius;
            } else if constexpr (std::is_same_v<S, StripShape>) {
              c = s.segment.a + (s.segment.b - s.segment.a) * uniform(0.0, 1.0);
              spread = s.radius;
            } else {
              Rect b = bounding_box(s.vertices);
              const Rect cut = Rect::from_ltrb(std::max(b.left, area.left), std::max(b.top, area.top),
                                               std::min(b.right(), area.right()), std::min(b.bottom(), area.bottom()));
              if (cut.width > 0 && cut.height > 0) b = cut;
              c = {uniform(b.left, b.right()), uniform(b.top, b.bottom())};
              spread = 2.0;
            }
          },
          n.shape());
      start = pt(c.x + uniform(-spread, spread), c.y + uniform(-spread, spread));
    } else {
      start = pt(uniform(area.left, area.right()), uniform(area.top, area.bottom()));
    }
    if (chance(0.04)) {
      if (!emit(pointer(ScriptCommand::Kind::DblClick, start))) break;
      continue;
    }
    const MouseButton b = chance(0.2) ? MouseButton::Right : MouseButton::Left;
    if (!emit(pointer(ScriptCommand::Kind::Down, start, b))) break;
    auto cur = start;
    const int moves = std::uniform_int_distribution<int>(0, 6)(rng);
    bool stop = false;
    for (int m = 0; m < moves && rep.steps < steps; ++m) {
      cur = {cur.first + std::uniform_int_distribution<int>(-40, 40)(rng),
             cur.second + std::uniform_int_distribution<int>(-40, 40)(rng)};
      if (!emit(pointer(ScriptCommand::Kind::Move, cur))) {
        stop = true;
        break;
      }
    }
    if (stop) break;
    if (!emit(pointer(ScriptCommand::Kind::Up, cur, b))) break;
  }
  return rep;
}

}  // namespace movekit
