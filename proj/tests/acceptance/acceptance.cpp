// Acceptance run: one PASS/FAIL line per criterion.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "../oracles.hpp"
#include "../reference_eval.hpp"
#include "movekit/expr.hpp"
#include "movekit/harness.hpp"

using namespace movekit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

const std::vector<std::string> kGolden = {"rect", "ring", "pie", "bar", "mixed"};

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path data(const std::string& rel) { return fs::path(MOVEKIT_DATA_DIR) / rel; }
std::string scene_text(const std::string& name) { return read(data("scenes/" + name + ".scene")); }
std::string script_file(const std::string& name) { return read(data("scripts/" + name + ".script")); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome hit_oracle() {
  std::string detail;
  bool pass = true;
  for (const auto& name : kGolden) {
    const Scene s = load_scene(scene_text(name));
    const auto t0 = std::chrono::steady_clock::now();
    const HitMap h = hitmap(s.mover(), 0, 0, 200, 200);
    long mismatches = 0;
    for (int r = 0; r < 200; ++r)
      for (int c = 0; c < 200; ++c) {
        const auto want = oracle::scan(s.mover(), {double(c), double(r)});
        const HitCell& got = h.at(c, r);
        const int kind = got.kind == HitCell::Kind::None ? 0 : got.kind == HitCell::Kind::Hit ? 1 : 2;
        if (kind != want.kind || (kind && (got.queue_index != want.object || got.node != want.node))) ++mismatches;
      }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    pass = pass && mismatches == 0 && secs < 10.0 && s.size() <= 20;
    if (!detail.empty()) detail += "; ";
    detail += name + " " + std::to_string(mismatches) + " mismatches " + fmt("%.2fs", secs);
  }
  return {pass, detail};
}

Outcome nnode_band() {
  long gaps_on = 0, gaps_in = 0, gaps_out = 0;
  double worst_in = 1e9, worst_out = 1e9;
  for (int r = 20; r <= 200; r += 5) {
    const Point2 c{1000, 1000};
    const CircleObject circle(CircleNR{c, double(r), 10});
    const Cover cover = circle.define_cover();
    auto border = [&](double a, double off) {
      const auto h = cover_hit(cover, point_on_ray(c, a, r + off));
      return h.outcome == HitOutcome::Hit && h.info.node_ordinal >= 1;
    };
    for (int k = 0; k < 3600; ++k) {
      const double a = k * kPi / 1800.0;
      gaps_on += !border(a, 0);
      gaps_in += !border(a, -3);
      gaps_out += !border(a, 3);
      double in = 0, out = 0;
      while (in < 6 && border(a, -(in + 0.01))) in += 0.01;
      while (out < 6 && border(a, out + 0.01)) out += 0.01;
      worst_in = std::min(worst_in, in);
      worst_out = std::min(worst_out, out);
    }
  }
  const long gaps = gaps_on + gaps_in + gaps_out;
  return {gaps == 0, "gaps on boundary " + std::to_string(gaps_on) + ", at -3px " + std::to_string(gaps_in) +
                         ", at +3px " + std::to_string(gaps_out) + "; guaranteed band -" + fmt("%.2f", worst_in) +
                         "/+" + fmt("%.2f", worst_out) + " px"};
}

Outcome resectoring() {
  std::mt19937_64 rng(229);
  std::uniform_real_distribution<double> val(1, 10), ang(0, kTwoPi), rad(45, 75);
  std::uniform_int_distribution<int> count(2, 12);
  long bad_sum = 0, bad_pair = 0, bad_min = 0, touched = 0;
  double worst_sum = 0, worst_pair = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    SectorRingShape g{{0, 0}, 40, 80, {}, ang(rng)};
    g.clockwise = rng() % 2 == 0;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) g.values.push_back(val(rng));
    const auto st = start_resectoring(g, g.partition_first() + static_cast<int>(rng() % n));
    const auto before = g.values;
    for (int m = 0; m < 3; ++m) {
      resector_move(g, st, point_on_ray({0, 0}, ang(rng), rad(rng)));
      const auto sw = pie_sweeps(g.values);
      const double e = std::fabs(std::accumulate(sw.begin(), sw.end(), 0.0) - kTwoPi);
      worst_sum = std::max(worst_sum, e);
      bad_sum += e > 1e-9;
      const double p = std::fabs(g.values[st.cw_index] + g.values[st.ccw_index] - st.pair_sum);
      worst_pair = std::max(worst_pair, p);
      bad_pair += p > 1e-9;
      for (double s : sw) bad_min += s < 0.05;
      for (std::size_t i = 0; i < g.values.size(); ++i)
        if (i != st.cw_index && i != st.ccw_index && g.values[i] != before[i]) ++touched;
    }
  }
  const bool pass = bad_sum == 0 && bad_pair == 0 && bad_min == 0 && touched == 0;
  return {pass, "10000 drags; max |sum-2pi| " + fmt("%.1e", worst_sum) + ", max pair drift " + fmt("%.1e", worst_pair) +
                    ", sweeps below 0.05: " + std::to_string(bad_min) + ", untouched changed: " + std::to_string(touched)};
}

Outcome visibility() {
  std::mt19937_64 rng(211);
  Plot p({100, 100, 200, 150});
  std::vector<SceneObject*> all{&p};
  std::vector<int> parent{-1};
  for (int i = 0; i < 2; ++i) {
    Scale& s = p.add_scale(i ? ScaleDirection::Vertical : ScaleDirection::Horizontal);
    const int si = static_cast<int>(all.size());
    all.push_back(&s);
    parent.push_back(0);
    all.push_back(&s.add_comment("s", s.band().center()));
    parent.push_back(si);
  }
  all.push_back(&p.add_comment("p", {150, 150}));
  parent.push_back(0);
  auto expected = [&](std::size_t i) {
    for (int k = static_cast<int>(i); k >= 0; k = parent[k])
      if (!all[k]->visible()) return false;
    return true;
  };
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  long invisible_registered = 0, resurrected = 0, mismatched = 0;
  for (int seq = 0; seq < 1000; ++seq) {
    for (int k = 0; k < 6; ++k) {
      const std::size_t i = pick(rng);
      all[i]->set_visible(rng() % 2 == 0);
      if (all[i]->visible())
        for (std::size_t j = 0; j < all.size(); ++j)
          if (parent[j] == static_cast<int>(i) && !all[j]->visible() && all[j]->effectively_visible()) ++resurrected;
    }
    Mover m;
    plot_into_mover(p, m, 0);
    std::set<const SceneObject*> reg;
    for (std::size_t i = 0; i < m.size(); ++i) {
      reg.insert(m[i].object);
      if (!m[i].object->effectively_visible()) ++invisible_registered;
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i]->effectively_visible() != expected(i)) ++mismatched;
      if (reg.count(all[i]) != (expected(i) ? 1u : 0u)) ++mismatched;
    }
  }
  const bool pass = invisible_registered == 0 && resurrected == 0 && mismatched == 0;
  return {pass, "1000 sequences; invisible registered " + std::to_string(invisible_registered) + ", resurrected " +
                    std::to_string(resurrected) + ", cascade mismatches " + std::to_string(mismatched)};
}

Outcome clipping() {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-300, 600);
  const Rect work{0, 0, 300, 300};
  long visual_out = 0, safe_out = 0, visual_drags = 0, safe_drags = 0;
  for (const ClippingMode mode : {ClippingMode::Visual, ClippingMode::Safe}) {
    Mover m(work);
    m.set_clipping(mode);
    RectObject a(ResizableRect{{100, 100, 60, 60}, {}});
    m.add(a);
    for (int i = 0; i < 1000; ++i) {
      a.move(130 - a.shape().rect.center().x, 130 - a.shape().rect.center().y);
      m.refresh_covers();
      if (!m.catch_at(a.shape().rect.center(), MouseButton::Left)) continue;
      (mode == ClippingMode::Visual ? visual_drags : safe_drags)++;
      for (int k = 0; k < 5; ++k) {
        m.move({u(rng), u(rng)});
        const Point2 q = m.last_clamped();
        if (mode == ClippingMode::Visual && !work.contains(q)) ++visual_out;
        if (mode == ClippingMode::Safe && (q.x < work.left || q.y < work.top)) ++safe_out;
      }
      m.release();
    }
  }
  const bool pass = visual_out == 0 && safe_out == 0 && visual_drags == 1000 && safe_drags == 1000;
  return {pass, "visual " + std::to_string(visual_drags) + " drags, " + std::to_string(visual_out) +
                    " outside; safe " + std::to_string(safe_drags) + " drags, " + std::to_string(safe_out) +
                    " left/above"};
}

Outcome editors() {
  std::mt19937_64 rng(307);
  // segment sliders
  std::vector<double> xs;
  for (int i = 0; i < 30; ++i) xs.push_back(60 + 11.0 * i);
  SegmentedSliders s({50, 0, 350, 100}, xs, std::vector<double>(xs.size(), 0.5), 50, 400);
  for (std::size_t i : {3u, 9u, 15u, 22u}) s.add_slider_at_point(i);
  long releases = 0, off_data = 0, disorder = 0;
  {
    Mover m;
    m.add(s);
    std::uniform_real_distribution<double> u(50, 400);
    std::uniform_int_distribution<std::size_t> pick(1, 4);
    for (int step = 0; step < 10000; ++step) {
      if (!m.catch_at({s.line_xs()[pick(rng)], 50}, MouseButton::Left)) continue;
      for (int k = 0; k < 3; ++k) m.move({u(rng), 50});
      m.release();
      ++releases;
      const auto& lines = s.line_xs();
      for (std::size_t i = 1; i < lines.size(); ++i) disorder += !(lines[i - 1] < lines[i]);
      for (std::size_t i = 1; i + 1 < lines.size(); ++i) off_data += std::find(xs.begin(), xs.end(), lines[i]) == xs.end();
    }
  }
  // graph dots
  long decreasing = 0;
  {
    std::uniform_real_distribution<double> u(0, 1), d(-30, 30);
    GraphDots g({0, 0, 300, 200}, {{10, 100}, {290, 100}});
    Mover m;
    m.add(g);
    for (int step = 0; step < 10000; ++step) {
      const int what = static_cast<int>(rng() % 3);
      const std::size_t n = g.dot_count();
      if (what == 0 && n >= 2) {
        const std::size_t k = rng() % (n - 1);
        const Point2 a = g.points()[k], b = g.points()[k + 1];
        g.insert_on_strip(static_cast<int>(k), a + (b - a) * u(rng) + Point2{d(rng) / 10, d(rng) / 10});
      } else if (what == 1) {
        m.refresh_covers();
        const Point2 at = g.points()[rng() % n];
        if (m.catch_at(at, MouseButton::Left)) {
          for (int k = 0; k < 3; ++k) m.move(at + Point2{d(rng), d(rng)});
          m.release();
        }
      } else {
        try {
          g.set_pair(rng() % n, u(rng), u(rng));
        } catch (const Error&) {
        }
      }
      const auto a = g.args();
      decreasing += !std::is_sorted(a.begin(), a.end());
      if (g.dot_count() > 200) g.remove_dot(rng() % g.dot_count());
    }
  }
  // dot nest
  long away = 0;
  {
    std::uniform_real_distribution<double> u(0, 400);
    Scene scene;
    scene.add(std::make_unique<GraphDots>(Rect{0, 0, 300, 200}, std::vector<Point2>{{20, 100}, {280, 100}}));
    auto& nest = scene.add(std::make_unique<DotNest>(Rect{320, 10, 60, 40}));
    for (int i = 0; i < 2000; ++i) {
      scene.press(rng() % 2 ? nest.patch_point() : Point2{u(rng), u(rng)}, MouseButton::Left);
      for (int k = 0; k < 3; ++k) scene.drag({u(rng), u(rng)});
      scene.release({u(rng), u(rng)}, MouseButton::Left);
      away += !(nest.patch_point() == nest.nest_point());
    }
  }
  const bool pass = off_data == 0 && disorder == 0 && decreasing == 0 && away == 0 && releases > 1000;
  return {pass, "sliders " + std::to_string(releases) + " releases, " + std::to_string(off_data) + " off data, " +
                    std::to_string(disorder) + " disordered; dots " + std::to_string(decreasing) +
                    " decreasing of 10000 steps; nest away while idle " + std::to_string(away)};
}

Outcome parser() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> arg(-5, 5);
  long disagreements = 0, parse_failures = 0;
  double worst = 0;
  for (const auto& s : refeval::kCorpus) {
    const auto a = analyse(s);
    if (!std::holds_alternative<RpnProgram>(a)) {
      ++parse_failures;
      continue;
    }
    for (int k = 0; k < 100; ++k) {
      const double x = arg(rng);
      const auto got = calculate(std::get<RpnProgram>(a), x);
      const auto want = refeval::reference(s, x);
      if (got.ok != want.has_value()) {
        ++disagreements;
        continue;
      }
      if (!got.ok) continue;
      const double rel = std::fabs(got.value - *want) / std::max(1.0, std::fabs(*want));
      worst = std::max(worst, rel);
      disagreements += rel > 1e-12;
    }
  }
  std::uniform_int_distribution<int> len(0, 40), byte(0, 255);
  long out_of_range = 0;
  for (int i = 0; i < 100000; ++i) {
    std::string s;
    for (int k = len(rng); k > 0; --k) s += static_cast<char>(byte(rng));
    const auto r = analyse(s);
    if (const auto* e = std::get_if<ParseError>(&r)) out_of_range += e->position > s.size();
  }
  const bool pass = refeval::kCorpus.size() == 50 && disagreements == 0 && parse_failures == 0 && out_of_range == 0;
  return {pass, std::to_string(refeval::kCorpus.size()) + " expressions x 100 args, " + std::to_string(disagreements) +
                    " disagreements, max rel err " + fmt("%.1e", worst) + "; 100000 fuzz inputs, " +
                    std::to_string(out_of_range) + " bad positions"};
}

Outcome persistence() {
  long diffs = 0, shared_ids = 0, restored = 0;
  for (const auto& name : kGolden) {
    const Scene s = load_scene(scene_text(name));
    const std::string a = save_scene(s);
    const std::string b = save_scene(load_scene(a));
    diffs += mask_ids(a) != mask_ids(b);
    std::set<ObjectId> live;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (ObjectId id : object_ids(s.at(i))) live.insert(id);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const SceneObject& o = s.at(i);
      if (dynamic_cast<const ElasticFrame*>(&o)) continue;
      auto r = restore_object_at(save_object(o), o.type_tag(), {300, 200});
      ++restored;
      for (ObjectId id : object_ids(*r)) shared_ids += live.count(id);
      for (ObjectId id : object_ids(*r)) live.insert(id);
    }
  }
  return {diffs == 0 && shared_ids == 0, std::to_string(kGolden.size()) + " scenes, " + std::to_string(diffs) +
                                             " round-trip diffs; " + std::to_string(restored) + " restores, " +
                                             std::to_string(shared_ids) + " reused ids"};
}

/// Runs f in a child process and returns what it wrote.
std::string in_child(const std::function<std::string()>& f) {
  int fd[2];
  if (pipe(fd) != 0) throw std::runtime_error("pipe failed");
  const pid_t pid = fork();
  if (pid == 0) {
    close(fd[0]);
    std::string out;
    try {
      out = f();
    } catch (const std::exception& e) {
      out = std::string("error: ") + e.what();
    }
    std::size_t off = 0;
    while (off < out.size()) {
      const ssize_t n = write(fd[1], out.data() + off, out.size() - off);
      if (n <= 0) break;
      off += static_cast<std::size_t>(n);
    }
    close(fd[1]);
    _exit(0);
  }
  close(fd[1]);
  std::string out;
  char buf[4096];
  for (ssize_t n; (n = ::read(fd[0], buf, sizeof buf)) > 0;) out.append(buf, static_cast<std::size_t>(n));
  close(fd[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  return out;
}

Outcome replay_determinism() {
  long differing = 0, failing = 0;
  for (const auto& name : kGolden) {
    const std::string scene = scene_text(name), script = script_file(name);
    std::vector<std::string> runs;
    for (int k = 0; k < 3; ++k)
      runs.push_back(in_child([&] {
        Scene s = load_scene(scene);
        const auto rep = replay(s, parse_script(script));
        std::string out = rep.failures.empty() ? "" : "FAILED\n";
        for (const auto& [n, text] : rep.snapshots) out += "snapshot " + n + "\n" + text;
        return out + "final\n" + save_scene(s);
      }));
    for (const auto& r : runs) failing += r.rfind("FAILED", 0) == 0 || r.rfind("error:", 0) == 0;
    differing += runs[0] != runs[1] || runs[1] != runs[2];
  }
  return {differing == 0 && failing == 0, std::to_string(kGolden.size()) + " pairs x 3 runs, " +
                                              std::to_string(differing) + " differing, " + std::to_string(failing) +
                                              " with failed assertions"};
}

Outcome covers() {
  long differing = 0;
  std::string which;
  for (const std::string name : {"rect", "ring", "pie", "bar"}) {
    const Scene s = load_scene(scene_text(name));
    if (render_covers(s.mover()) != read(data("golden/" + name + ".covers"))) {
      ++differing;
      which += " " + name;
    }
  }
  return {differing == 0, "4 goldens, " + std::to_string(differing) + " differing" + which};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"hit-oracle", hit_oracle}, {"nnode-band", nnode_band}, {"resectoring", resectoring},
      {"visibility", visibility}, {"clipping", clipping},     {"editors", editors},
      {"parser", parser},         {"persistence", persistence}, {"replay", replay_determinism},
      {"covers", covers}};

  CLI::App app{"movekit acceptance criteria"};
  std::string only;
  app.add_option("--only", only, "run a single criterion");
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true, ran = false;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && only != name) continue;
    ran = true;
    Outcome o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    all_pass = all_pass && o.pass;
  }
  if (!ran) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
