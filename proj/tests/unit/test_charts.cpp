#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "movekit/charts.hpp"
#include "movekit/mover.hpp"

using namespace movekit;

namespace {

std::vector<const SceneObject*> queue_objects(const Mover& m) {
  std::vector<const SceneObject*> out;
  for (std::size_t i = 0; i < m.size(); ++i) out.push_back(m[i].object);
  return out;
}

bool registered(const Mover& m, const SceneObject* o) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i].object == o) return true;
  return false;
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

// ---------------------------------------------------------------------------
// Plot composition

TEST(Plot, IntoMoverOrder) {
  Plot p({100, 100, 200, 150});
  Scale& h = p.add_scale(ScaleDirection::Horizontal);
  Scale& v = p.add_scale(ScaleDirection::Vertical);
  RectComment& c = p.add_comment("title", {200, 120});
  Mover m;
  plot_into_mover(p, m, 0);
  const std::vector<const SceneObject*> want{&p.corner_helper(), &v, &h, &c, &p};
  EXPECT_EQ(queue_objects(m), want);
}

TEST(Plot, IntoMoverAtPositionKeepsOthers) {
  RectObject a(ResizableRect{{0, 0, 10, 10}, {}}), b(ResizableRect{{0, 0, 10, 10}, {}});
  Plot p({100, 100, 200, 150});
  Mover m;
  m.add(a);
  m.add(b);
  plot_into_mover(p, m, 1);
  ASSERT_EQ(m.size(), 4u);
  EXPECT_EQ(m[0].object, &a);
  EXPECT_EQ(m[1].object, &p.corner_helper());
  EXPECT_EQ(m[2].object, &p);
  EXPECT_EQ(m[3].object, &b);
}

TEST(Plot, HiddenPlotRegistersNothing) {
  Plot p({100, 100, 200, 150});
  p.add_scale(ScaleDirection::Horizontal);
  p.add_comment("x", {150, 150});
  p.set_visible(false);
  Mover m;
  plot_into_mover(p, m, 0);
  EXPECT_EQ(m.size(), 0u);
}

TEST(Plot, HiddenScaleAndItsCommentsAreAbsent) {
  Plot p({100, 100, 200, 150});
  Scale& h = p.add_scale(ScaleDirection::Horizontal);
  RectComment& hc = h.add_comment("units", h.band().center());
  Scale& v = p.add_scale(ScaleDirection::Vertical);
  h.set_visible(false);
  Mover m;
  plot_into_mover(p, m, 0);
  EXPECT_FALSE(registered(m, &h));
  EXPECT_FALSE(registered(m, &hc));
  EXPECT_TRUE(registered(m, &v));
  EXPECT_TRUE(registered(m, &p));
}

TEST(Plot, ScaleCommentsPrecedeTheirScale) {
  Plot p({100, 100, 200, 150});
  Scale& h = p.add_scale(ScaleDirection::Horizontal);
  RectComment& hc = h.add_comment("units", h.band().center());
  Mover m;
  plot_into_mover(p, m, 0);
  const auto q = queue_objects(m);
  const auto ic = std::find(q.begin(), q.end(), &hc), is = std::find(q.begin(), q.end(), &h);
  ASSERT_NE(ic, q.end());
  EXPECT_LT(ic, is);
}

TEST(Plot, HelperResizesThroughScaleBand) {
  Plot p({100, 100, 200, 150});
  // a band lying across the bottom border hides the area's own corner nodes there
  Scale& h = p.add_scale(ScaleDirection::Horizontal, -15.0);
  ASSERT_TRUE(h.band().contains(Point2{100, 250}));
  Mover m;
  plot_into_mover(p, m, 0);
  ASSERT_TRUE(m.catch_at({100, 250}, MouseButton::Left));
  EXPECT_EQ(m.caught()->object, &p.corner_helper());
  m.move({90, 270});
  EXPECT_EQ(p.area_rect(), (Rect{90, 100, 210, 170}));
  EXPECT_EQ(h.band().width, 210);
}

TEST(Plot, HelperResizeLengthensScalesAndRejectsSmallArea) {
  Plot p({100, 100, 200, 150});
  Scale& h = p.add_scale(ScaleDirection::Horizontal);
  Scale& v = p.add_scale(ScaleDirection::Vertical);
  const double hw = h.band().width, vh = v.band().height;
  EXPECT_TRUE(p.corner_helper_resize(rect_node::kTopRight, 20, 0));
  EXPECT_EQ(h.band().width, hw + 20);
  EXPECT_EQ(v.band().height, vh);
  EXPECT_FALSE(p.corner_helper_resize(rect_node::kBottomRight, -200, -200));
  EXPECT_EQ(p.area_rect().width, 220);
  p.corner_helper_resize(rect_node::kTopRight, -181, 0);
  EXPECT_EQ(p.area_rect().width, 220);
  EXPECT_TRUE(p.corner_helper_resize(rect_node::kTopRight, -180, 0));
  EXPECT_EQ(p.area_rect().width, 40);
}

TEST(Plot, CommentsFollowResizeByNormalizedPosition) {
  Plot p({0, 0, 200, 100});
  RectComment& c = p.add_comment("mid", {50, 25});
  EXPECT_DOUBLE_EQ(c.u(), 0.25);
  EXPECT_DOUBLE_EQ(c.v(), 0.25);
  p.corner_helper_resize(rect_node::kBottomRight, 200, 100);
  EXPECT_NEAR(c.center().x, 100, 1e-9);
  EXPECT_NEAR(c.center().y, 50, 1e-9);
}

TEST(Scale, MovesOnlyAthwart) {
  Plot p({100, 100, 200, 150});
  Scale& h = p.add_scale(ScaleDirection::Horizontal);
  Scale& v = p.add_scale(ScaleDirection::Vertical);
  const Rect hb = h.band(), vb = v.band();
  EXPECT_TRUE(h.move_node(0, 5, 7, {}, MouseButton::Left));
  EXPECT_EQ(h.band(), hb.translated(0, 7));
  EXPECT_TRUE(v.move_node(0, -4, 9, {}, MouseButton::Left));
  EXPECT_EQ(v.band(), vb.translated(-4, 0));
}

TEST(Scale, FrozenIsCaughtUnchangedWithHandCursor) {
  Plot p({100, 100, 200, 150});
  Scale& h = p.add_scale(ScaleDirection::Horizontal, 10.0);
  h.set_movable(false);
  const Cover c = h.define_cover();
  EXPECT_EQ(c[0].behaviour(), NodeBehaviour::Frozen);
  EXPECT_EQ(c[0].cursor(), CursorHint::Hand);
  Mover m;
  plot_into_mover(p, m, 0);
  const Rect before = h.band();
  ASSERT_TRUE(m.catch_at(before.center(), MouseButton::Left));
  EXPECT_EQ(m.caught()->object, &h);
  m.move(before.center() + Point2{0, 30});
  EXPECT_EQ(h.band(), before);
}

TEST(Visibility, HidingPlotHidesAllDescendants) {
  Plot p({100, 100, 200, 150});
  Scale& h = p.add_scale(ScaleDirection::Horizontal);
  Scale& v = p.add_scale(ScaleDirection::Vertical);
  auto& c1 = p.add_comment("a", {150, 150});
  auto& c2 = h.add_comment("b", h.band().center());
  auto& c3 = v.add_comment("c", v.band().center());
  p.set_visible(false);
  for (const SceneObject* o : std::initializer_list<const SceneObject*>{&h, &v, &c1, &c2, &c3, &p.corner_helper()})
    EXPECT_FALSE(o->effectively_visible());
  p.set_visible(true);
  for (const SceneObject* o : std::initializer_list<const SceneObject*>{&h, &v, &c1, &c2, &c3, &p.corner_helper()})
    EXPECT_TRUE(o->effectively_visible());
}

TEST(Visibility, OwnFlagSurvivesParentRestore) {
  Plot p({100, 100, 200, 150});
  Scale& h = p.add_scale(ScaleDirection::Horizontal);
  auto& hc = h.add_comment("b", h.band().center());
  h.set_visible(false);
  EXPECT_FALSE(hc.effectively_visible());
  p.set_visible(false);
  p.set_visible(true);
  EXPECT_FALSE(h.effectively_visible());
  EXPECT_FALSE(hc.effectively_visible());
  h.set_visible(true);
  EXPECT_TRUE(hc.effectively_visible());
}

TEST(VisibilityProperty, RegistrationMatchesEffectiveVisibility) {
  std::mt19937_64 rng(211);
  Plot p({100, 100, 200, 150});
  std::vector<SceneObject*> all{&p};
  for (int i = 0; i < 2; ++i) {
    Scale& s = p.add_scale(i ? ScaleDirection::Vertical : ScaleDirection::Horizontal);
    all.push_back(&s);
    all.push_back(&s.add_comment("s", s.band().center()));
  }
  all.push_back(&p.add_comment("p", {150, 150}));
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int seq = 0; seq < 1000; ++seq) {
    for (int k = 0; k < 5; ++k) all[pick(rng)]->set_visible(rng() % 2 == 0);
    Mover m;
    plot_into_mover(p, m, 0);
    for (SceneObject* o : all) EXPECT_EQ(registered(m, o), o->effectively_visible());
    for (std::size_t i = 0; i < m.size(); ++i) EXPECT_TRUE(m[i].object->effectively_visible());
  }
}

TEST(PlotProperty, TranslationIsRigid) {
  std::mt19937_64 rng(223);
  std::uniform_real_distribution<double> d(-50, 50);
  Plot p({100, 100, 200, 150});
  Scale& h = p.add_scale(ScaleDirection::Horizontal);
  Scale& v = p.add_scale(ScaleDirection::Vertical, 12);
  auto& hc = h.add_comment("h", h.band().center() + Point2{3, 2});
  auto& pc = p.add_comment("p", {180, 140});
  for (int i = 0; i < 1000; ++i) {
    const double dx = d(rng), dy = d(rng);
    const Rect a = p.area_rect(), hb = h.band(), vb = v.band();
    const Point2 c1 = hc.center(), c2 = pc.center();
    const Rect helper = p.corner_helper().bounds();
    ASSERT_TRUE(p.move_node(rect_node::kBody, dx, dy, {}, MouseButton::Left));
    EXPECT_EQ(p.area_rect(), a.translated(dx, dy));
    EXPECT_EQ(h.band(), hb.translated(dx, dy));
    EXPECT_EQ(v.band(), vb.translated(dx, dy));
    EXPECT_NEAR(p.corner_helper().bounds().left, helper.left + dx, 1e-9);
    EXPECT_NEAR(p.corner_helper().bounds().top, helper.top + dy, 1e-9);
    EXPECT_NEAR(hc.center().x, c1.x + dx, 1e-9);
    EXPECT_NEAR(hc.center().y, c1.y + dy, 1e-9);
    EXPECT_NEAR(pc.center().x, c2.x + dx, 1e-9);
    EXPECT_NEAR(pc.center().y, c2.y + dy, 1e-9);
  }
}

TEST(Identify, Paths) {
  Plot p0({0, 0, 100, 100}), p1({200, 0, 100, 100}), p2({400, 0, 100, 100});
  Scale& h0 = p0.add_scale(ScaleDirection::Horizontal);
  for (int i = 0; i < 3; ++i) h0.add_comment("c", h0.band().center());
  auto& c3 = h0.add_comment("c3", h0.band().center());
  Scale& v1 = p1.add_scale(ScaleDirection::Vertical);
  std::vector<SceneObject*> owners{&p0, &p1, &p2};
  EXPECT_EQ(identify(owners, p2), (PartPath{2, std::nullopt, std::nullopt, std::nullopt, false}));
  EXPECT_EQ(identify(owners, v1), (PartPath{1, ScaleDirection::Vertical, 0, std::nullopt, false}));
  EXPECT_EQ(identify(owners, c3), (PartPath{0, ScaleDirection::Horizontal, 0, 3, false}));
  EXPECT_TRUE(identify(owners, p1.corner_helper()).helper);
  RectObject orphan(ResizableRect{{0, 0, 10, 10}, {}});
  try {
    identify(owners, orphan);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownOwner);
  }
}

// ---------------------------------------------------------------------------
// Pie chart and radial comments

TEST(PieSweeps, Examples) {
  const std::vector<double> a{1, 1, 2};
  const auto s = pie_sweeps(a);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s[0], kPi / 2);
  EXPECT_DOUBLE_EQ(s[1], kPi / 2);
  EXPECT_DOUBLE_EQ(s[2], kPi);
  const std::vector<double> one{5};
  EXPECT_DOUBLE_EQ(pie_sweeps(one)[0], kTwoPi);
  const std::vector<double> zeros{0, 0}, neg{1, -1};
  try {
    pie_sweeps(zeros);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllZero);
  }
  try {
    pie_sweeps(neg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeValue);
  }
}

TEST(RadialComment, InsideKeepsRatio) {
  RadialComment c(make_text("in", {140, 100}), RadialMode::ToCircle, {{100, 100}, 0, 50, 0});
  EXPECT_TRUE(c.placement().inside);
  EXPECT_NEAR(c.placement().coef, 0.8, 1e-12);
  const Point2 p = radial_comment_sync(c, {{100, 100}, 0, 100, 0});
  EXPECT_NEAR(p.x, 180, 1e-9);
  EXPECT_NEAR(p.y, 100, 1e-9);
  EXPECT_NEAR(c.center().x, 180, 1e-9);
}

TEST(RadialComment, OutsideKeepsPixelOffset) {
  RadialComment c(make_text("out", {160, 100}), RadialMode::ToCircle, {{100, 100}, 0, 50, 0});
  EXPECT_FALSE(c.placement().inside);
  EXPECT_NEAR(c.placement().coef, 10, 1e-12);
  const Point2 p = radial_comment_sync(c, {{100, 100}, 0, 80, 0});
  EXPECT_NEAR(p.x, 190, 1e-9);
  EXPECT_NEAR(p.y, 100, 1e-9);
}

TEST(RadialComment, OutsideOffsetIsAtLeastOnePixel) {
  RadialComment c(make_text("edge", {150.5, 100}), RadialMode::ToCircle, {{100, 100}, 0, 50, 0});
  EXPECT_FALSE(c.placement().inside);
  EXPECT_EQ(c.placement().coef, 1.0);
}

TEST(RadialComment, RingCenterStaysAtCenter) {
  RadialComment c(make_text("hub", {100, 100}), RadialMode::ToRing, {{100, 100}, 30, 60, 0});
  EXPECT_EQ(c.placement().coef, -1.0);
  const Point2 p = radial_comment_sync(c, {{120, 90}, 45, 70, 0});
  EXPECT_NEAR(p.x, 120, 1e-9);
  EXPECT_NEAR(p.y, 90, 1e-9);
}

TEST(RadialComment, RingBetweenBordersInterpolates) {
  RadialComment c(make_text("mid", {145, 100}), RadialMode::ToRing, {{100, 100}, 30, 60, 0});
  EXPECT_NEAR(c.placement().coef, 0.5, 1e-12);
  const Point2 p = radial_comment_sync(c, {{100, 100}, 40, 100, 0});
  EXPECT_NEAR(p.x, 170, 1e-9);
}

TEST(RadialComment, SectorFollowsSectorStart) {
  RadialComment c(make_text("s", point_on_ray({0, 0}, 0.5, 30)), RadialMode::ToSector, {{0, 0}, 0, 60, 0.2});
  EXPECT_NEAR(c.placement().angle, 0.3, 1e-12);
  const Point2 p = radial_comment_sync(c, {{0, 0}, 0, 60, 1.2});
  EXPECT_NEAR(ray_angle({0, 0}, p), 1.5, 1e-12);
}

TEST(RadialCommentProperty, RandomResizesPreserveCoefficients) {
  std::mt19937_64 rng(227);
  std::uniform_real_distribution<double> r(20, 200), a(0, kTwoPi), f(0.05, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const RadialGeometry g{{300, 300}, 0, r(rng), 0};
    const double dist = f(rng) * g.r_outer;
    RadialComment c(make_text("t", point_on_ray(g.center, a(rng), dist)), RadialMode::ToCircle, g);
    const RadialPlacement before = c.placement();
    const RadialGeometry g2{{300, 300}, 0, r(rng), 0};
    const Point2 p = radial_comment_sync(c, g2);
    const double d2 = distance(g2.center, p);
    if (before.inside)
      EXPECT_NEAR(d2 / g2.r_outer, before.coef, 1e-9);
    else
      EXPECT_NEAR(d2 - g2.r_outer, before.coef, 1e-6);
  }
}

namespace {

std::unique_ptr<PieChart> sample_pie() {
  auto pie = std::make_unique<PieChart>(CircleNR{{200, 200}, 80, 20}, std::vector<double>{1, 2, 3, 4}, 0.3);
  pie->add_default_sector_comments();
  pie->add_circle_comment("title", {200, 90});
  return pie;
}

}  // namespace

TEST(Pie, FixedAnglesUnchangedByRotation) {
  auto pie = sample_pie();
  pie->set_fix_angles(true);
  std::vector<double> before;
  for (auto& c : pie->sector_comments()) before.push_back(c->angle());
  pie_rotate(*pie, kPi);
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(pie->sector_comments()[i]->angle(), before[i]);
}

TEST(Pie, FreeAnglesTurnWithTheChart) {
  auto pie = sample_pie();
  pie->set_fix_angles(false);
  pie->set_easy_to_read(false);
  std::vector<double> before;
  for (auto& c : pie->sector_comments()) before.push_back(c->angle());
  pie_rotate(*pie, kPi);
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_NEAR(pie->sector_comments()[i]->angle(), before[i] + kPi, 1e-12);
}

TEST(Pie, EasyToReadFlipsUpsideDownTexts) {
  auto pie = sample_pie();
  pie->set_fix_angles(false);
  pie->set_easy_to_read(true);
  pie_rotate(*pie, 2.0);
  for (auto& c : pie->sector_comments()) {
    const double n = normalize_angle(c->angle());
    EXPECT_FALSE(n > kPi / 2 + 1e-12 && n < 3 * kPi / 2 - 1e-12);
  }
}

TEST(Pie, FullTurnRestoresCommentPositions) {
  auto pie = sample_pie();
  std::vector<Point2> before;
  for (auto& c : pie->sector_comments()) before.push_back(c->center());
  pie_rotate(*pie, kTwoPi);
  for (std::size_t i = 0; i < before.size(); ++i) {
    EXPECT_NEAR(pie->sector_comments()[i]->center().x, before[i].x, 1e-6);
    EXPECT_NEAR(pie->sector_comments()[i]->center().y, before[i].y, 1e-6);
  }
}

TEST(Pie, CircleCommentsIgnoreRotation) {
  auto pie = sample_pie();
  const Point2 before = pie->circle_comments()[0]->center();
  const double angle = pie->circle_comments()[0]->angle();
  pie_rotate(*pie, 1.0);
  EXPECT_EQ(pie->circle_comments()[0]->center(), before);
  EXPECT_EQ(pie->circle_comments()[0]->angle(), angle);
}

TEST(Pie, SectorCommentsRotateWithSectors) {
  auto pie = sample_pie();
  auto& c = *pie->sector_comments()[0];
  const double a0 = ray_angle(pie->circle().center, c.center());
  pie_rotate(*pie, 0.5);
  EXPECT_NEAR(normalize_angle(ray_angle(pie->circle().center, c.center()) - a0), 0.5, 1e-9);
}

TEST(Pie, TextsToCenter) {
  PieChart pie(CircleNR{{0, 0}, 80, 20}, {1, 1});
  auto& a = pie.add_sector_comment("a", {40, 0});
  auto& b = pie.add_sector_comment("b", {-40, 0});
  auto& c = pie.add_sector_comment("c", point_on_ray({0, 0}, 1.0, 40));
  sector_texts_to_center(pie);
  EXPECT_NEAR(a.angle(), 0.0, 1e-12);
  // angle pi is upside-down: flipped by pi to 0
  EXPECT_NEAR(normalize_angle(b.angle()), 0.0, 1e-12);
  for (RadialComment* k : {&a, &b, &c}) {
    const double radial = ray_angle({0, 0}, k->center());
    const double diff = std::fmod(std::abs(k->angle() - radial), kPi);
    EXPECT_TRUE(diff < 1e-9 || kPi - diff < 1e-9);
  }
}

TEST(Pie, RightDragRotatesPhase) {
  auto pie = sample_pie();
  Mover m;
  pie->into_mover(m, 0);
  ASSERT_TRUE(m.catch_at({260, 200}, MouseButton::Right));
  EXPECT_EQ(m.caught()->object, pie.get());
  m.move({200, 140});
  EXPECT_NEAR(pie->phase(), 0.3 + kPi / 2, 1e-9);
}

TEST(Pie, BorderDragResizesAndMovesComments) {
  auto pie = sample_pie();
  auto& c = *pie->sector_comments()[1];
  const double ratio = distance(pie->circle().center, c.center()) / 80.0;
  ASSERT_TRUE(pie->move_node(1, 0, 0, {300, 200}, MouseButton::Left));
  EXPECT_EQ(pie->circle().radius, 100);
  EXPECT_NEAR(distance(pie->circle().center, c.center()) / 100.0, ratio, 1e-9);
  EXPECT_FALSE(pie->move_node(1, 0, 0, {210, 200}, MouseButton::Left));
}

// ---------------------------------------------------------------------------
// Resectoring

TEST(Resector, TwoSectorsWrap) {
  const SectorRingShape g{{0, 0}, 40, 80, {30, 10}, 0.4};
  const auto st = start_resectoring(g, g.partition_first());
  EXPECT_EQ(st.boundary_index, 0);
  std::vector<std::size_t> got{st.cw_index, st.ccw_index};
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(st.pair_sum, 40);
  EXPECT_NEAR(st.max_angle - st.min_angle, kTwoPi, 1e-12);
}

TEST(Resector, LimitsSpanBothNeighbours) {
  const SectorRingShape g{{0, 0}, 40, 80, {1, 2, 3, 4}, 0.0};
  const auto sw = g.sweeps();
  const auto st = start_resectoring(g, g.partition_first() + 2);
  EXPECT_EQ(st.cw_index, 1u);
  EXPECT_EQ(st.ccw_index, 2u);
  EXPECT_NEAR(st.max_angle - st.min_angle, sw[1] + sw[2], 1e-12);
  EXPECT_NEAR(st.min_angle, sw[0], 1e-12);
  EXPECT_EQ(st.pair_sum, 5);
}

TEST(Resector, NonPartitionNodeIsAnError) {
  const SectorRingShape g{{0, 0}, 40, 80, {1, 2}, 0.0};
  try {
    start_resectoring(g, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAPartition);
  }
  EXPECT_THROW(start_resectoring(g, g.partition_first() + 2), Error);
}

TEST(Resector, MidpointSplitsEvenly) {
  SectorRingShape g{{0, 0}, 40, 80, {1, 3, 4}, 0.0};
  const auto st = start_resectoring(g, g.partition_first() + 1);
  const double mid = (st.min_angle + st.max_angle) / 2;
  ASSERT_TRUE(resector_move(g, st, point_on_ray({0, 0}, mid, 60)));
  EXPECT_NEAR(g.values[0], st.pair_sum / 2, 1e-12);
  EXPECT_NEAR(g.values[1], st.pair_sum / 2, 1e-12);
}

TEST(Resector, QuarterAngleSplitsThreeToOne) {
  // sweeps pi/2, pi/2, pi: boundary 1 sits at pi/2 between limits 0 and pi
  SectorRingShape g{{0, 0}, 40, 80, {1, 1, 2}, 0.0};
  const auto st = start_resectoring(g, g.partition_first() + 1);
  EXPECT_NEAR(st.min_angle, 0.0, 1e-12);
  EXPECT_NEAR(st.max_angle, kPi, 1e-12);
  ASSERT_TRUE(resector_move(g, st, point_on_ray({0, 0}, kPi / 4, 60)));
  const double part_ccw = (kPi - kPi / 4) / kPi;
  EXPECT_NEAR(part_ccw, 0.75, 1e-15);
  EXPECT_NEAR(g.values[st.ccw_index], 0.75 * 2, 1e-12);
  EXPECT_NEAR(g.values[st.cw_index], 0.25 * 2, 1e-12);
  EXPECT_EQ(g.values[2], 2.0);
}

TEST(Resector, TooCloseToALimitIsRejected) {
  SectorRingShape g{{0, 0}, 40, 80, {1, 1, 2}, 0.0};
  const auto st = start_resectoring(g, g.partition_first() + 1);
  const auto before = g.values;
  EXPECT_FALSE(resector_move(g, st, point_on_ray({0, 0}, 0.04, 60)));
  EXPECT_FALSE(resector_move(g, st, point_on_ray({0, 0}, kPi - 0.04, 60)));
  EXPECT_EQ(g.values, before);
}

TEST(Resector, BoundaryZeroMovesPhase) {
  SectorRingShape g{{0, 0}, 40, 80, {1, 1, 2}, 0.0};
  const auto st = start_resectoring(g, g.partition_first());
  ASSERT_TRUE(resector_move(g, st, point_on_ray({0, 0}, 0.3, 60)));
  EXPECT_NEAR(g.phase, 0.3, 1e-12);
}

TEST(Resector, ClockwiseRingKeepsTheRules) {
  SectorRingShape g{{0, 0}, 40, 80, {1, 1, 2}, 0.0};
  g.clockwise = true;
  const auto st = start_resectoring(g, g.partition_first() + 1);
  EXPECT_NEAR(st.max_angle - st.min_angle, kPi, 1e-12);
  const double mid = (st.min_angle + st.max_angle) / 2;
  ASSERT_TRUE(resector_move(g, st, point_on_ray({0, 0}, mid, 60)));
  EXPECT_NEAR(g.values[0], 1.0, 1e-12);
  EXPECT_NEAR(g.values[1], 1.0, 1e-12);
}

TEST(Resector, DragThroughMover) {
  SectorRing ring(SectorRingShape{{200, 200}, 40, 80, {1, 1, 2}, 0.0});
  Mover m;
  m.add(ring);
  const Point2 on_boundary = point_on_ray({200, 200}, kPi / 2, 60);
  ASSERT_TRUE(m.catch_at(on_boundary, MouseButton::Left));
  EXPECT_EQ(m.caught()->node_ordinal, ring.shape().partition_first() + 1);
  m.move(point_on_ray({200, 200}, kPi / 4, 60));
  EXPECT_NEAR(ring.shape().values[1], 1.5, 1e-9);
  m.release();
  EXPECT_FALSE(ring.resector());
}

TEST(ResectorProperty, FuzzedDragsConserve) {
  std::mt19937_64 rng(229);
  std::uniform_real_distribution<double> val(1, 10), ang(0, kTwoPi);
  std::uniform_int_distribution<int> count(2, 12);
  for (int trial = 0; trial < 10000; ++trial) {
    SectorRingShape g{{0, 0}, 40, 80, {}, ang(rng)};
    g.clockwise = rng() % 2 == 0;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) g.values.push_back(val(rng));
    const auto st = start_resectoring(g, g.partition_first() + static_cast<int>(rng() % n));
    const auto before = g.values;
    resector_move(g, st, point_on_ray({0, 0}, ang(rng), 60));
    const auto sw = pie_sweeps(g.values);
    ASSERT_NEAR(sum(sw), kTwoPi, 1e-9);
    ASSERT_NEAR(g.values[st.cw_index] + g.values[st.ccw_index], st.pair_sum, 1e-9);
    for (double s : sw) ASSERT_GE(s, 0.05 - 1e-12);
    for (std::size_t i = 0; i < g.values.size(); ++i)
      if (i != st.cw_index && i != st.ccw_index) ASSERT_EQ(g.values[i], before[i]);
  }
}

// ---------------------------------------------------------------------------
// Ring set

TEST(RingSet, RingsMustNotOverlap) {
  EXPECT_THROW(RingSet({0, 0}, {{30, 60, {1}, 0}, {50, 80, {1}, 0}}), Error);
  RingSet s({0, 0}, {{30, 60, {1}, 0}, {70, 90, {1, 2}, 0}});
  s.add_ring(5, 20, {3});
  EXPECT_EQ(s.rings().back().r_inner, 95);
  EXPECT_THROW(s.add_ring(-1, 20, {1}), Error);
}

TEST(RingSet, SharedBorderMovesOnlyInward) {
  RingSet s({0, 0}, {{30, 60, {1}, 0}, {60, 90, {1}, 0}});
  const auto blocks = s.border_blocks();
  const auto& outer0 = blocks[1];
  ASSERT_TRUE(outer0.outer);
  EXPECT_FALSE(s.move_node(outer0.first, 0, 0, {65, 0}, MouseButton::Left));
  EXPECT_EQ(s.rings()[0].r_outer, 60);
  EXPECT_TRUE(s.move_node(outer0.first, 0, 0, {55, 0}, MouseButton::Left));
  EXPECT_EQ(s.rings()[0].r_outer, 55);
}

TEST(RingSet, RotationOfEachRingIsIndependent) {
  RingSet s({100, 100}, {{30, 60, {1, 2}, 0}, {70, 100, {1, 1}, 0}});
  Mover m;
  m.add(s);
  ASSERT_TRUE(m.catch_at({185, 100}, MouseButton::Right));
  m.move({100, 15});
  EXPECT_NEAR(s.rings()[1].phase, kPi / 2, 1e-9);
  EXPECT_EQ(s.rings()[0].phase, 0.0);
}

TEST(RingSet, HoleIsTransparent) {
  RingSet s({100, 100}, {{30, 60, {1}, 0}});
  EXPECT_EQ(cover_hit(s.define_cover(), {100, 100}).outcome, HitOutcome::Miss);
  EXPECT_EQ(cover_hit(s.define_cover(), {145, 100}).outcome, HitOutcome::Hit);
}

// ---------------------------------------------------------------------------
// Bars

TEST(BarLayout, WidthExamples) {
  BarChartData d;
  d.values.assign(5, std::vector<double>(4, 0.5));
  d.fill_lo = 0;
  d.fill_hi = 1;
  EXPECT_EQ(bar_width(d, {0, 0, 200, 100}), 10);
  d.fill_lo = 0.1;
  d.fill_hi = 0.9;
  EXPECT_EQ(bar_width(d, {0, 0, 200, 100}), 8);
  d.fill_lo = 0.9;
  d.fill_hi = 0.9;
  try {
    bar_width(d, {0, 0, 200, 100});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadFill);
  }
}

TEST(BarLayout, BaseLevelMidRangeGoesBothWays) {
  BarChartData d;
  d.values = {{0.2, 0.9}};
  d.lo = 0;
  d.hi = 1;
  d.base_level = 0.5;
  const Rect area{0, 0, 100, 100};
  const auto bars = bar_layout(d, area);
  ASSERT_EQ(bars.size(), 2u);
  EXPECT_DOUBLE_EQ(bars[0].rect.top, 50);
  EXPECT_DOUBLE_EQ(bars[0].rect.bottom(), 80);
  EXPECT_DOUBLE_EQ(bars[1].rect.top, 10);
  EXPECT_DOUBLE_EQ(bars[1].rect.bottom(), 50);
}

TEST(BarLayoutProperty, EqualWidthsInsideArea) {
  std::mt19937_64 rng(233);
  std::uniform_real_distribution<double> u(0, 1), sz(60, 400);
  for (int trial = 0; trial < 500; ++trial) {
    BarChartData d;
    const int segs = 1 + static_cast<int>(rng() % 6), sets = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < segs; ++i) {
      d.values.emplace_back();
      for (int j = 0; j < sets; ++j) d.values.back().push_back(u(rng) * 1.4 - 0.2);
    }
    d.base_level = u(rng);
    d.fill_lo = u(rng) * 0.4;
    d.fill_hi = 0.6 + u(rng) * 0.4;
    d.orientation = static_cast<int>(rng() % 4);
    const Rect area{10, 20, sz(rng), sz(rng)};
    const auto bars = bar_layout(d, area);
    const double w = bar_width(d, area);
    for (const auto& b : bars) {
      EXPECT_NEAR(d.orientation % 2 == 0 ? b.rect.width : b.rect.height, w, 1e-9);
      EXPECT_TRUE(area.inflated(1e-9).contains(b.rect));
    }
  }
}

TEST(BarChart, RotationKeepsAreaAndFlipsScales) {
  BarChartData d;
  d.values = {{0.3, 0.6}, {0.5, 0.2}, {0.9, 0.4}};
  BarChart chart({50, 50, 300, 200}, d);
  const Rect area = chart.area_rect();
  const auto bars0 = chart.bars();
  const Rect num0 = chart.num_scale().band(), text0 = chart.text_scale().band();
  EXPECT_EQ(chart.num_scale().direction(), ScaleDirection::Vertical);
  bar_chart_rotate(chart);
  EXPECT_EQ(chart.num_scale().direction(), ScaleDirection::Horizontal);
  EXPECT_EQ(chart.text_scale().direction(), ScaleDirection::Vertical);
  EXPECT_EQ(chart.area_rect(), area);
  for (int k = 0; k < 3; ++k) {
    bar_chart_rotate(chart);
    EXPECT_EQ(chart.area_rect(), area);
  }
  EXPECT_EQ(chart.orientation(), 0);
  EXPECT_EQ(chart.num_scale().band(), num0);
  EXPECT_EQ(chart.text_scale().band(), text0);
  const auto bars4 = chart.bars();
  ASSERT_EQ(bars4.size(), bars0.size());
  for (std::size_t i = 0; i < bars0.size(); ++i) EXPECT_EQ(bars4[i].rect, bars0[i].rect);
}

TEST(SingleBar, TopFollowsFill) {
  SingleBar b({0, 0, 20, 100}, 0.25);
  EXPECT_DOUBLE_EQ(b.top(), 75);
  EXPECT_FALSE(single_bar_move(b, -80));
  EXPECT_DOUBLE_EQ(b.top(), 75);
  EXPECT_TRUE(single_bar_move(b, -25));
  EXPECT_DOUBLE_EQ(b.fill(), 0.5);
}

TEST(SingleBar, EmptyBarKeepsTwoPixelBody) {
  SingleBar b({0, 0, 20, 100}, 0.25);
  ASSERT_TRUE(single_bar_move(b, 25));
  EXPECT_DOUBLE_EQ(b.fill(), 0.0);
  const Cover c = b.define_cover();
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[1].behaviour(), NodeBehaviour::Transparent);
  const auto box = bounding_box(std::get<PolygonShape>(c[1].shape()).vertices);
  EXPECT_DOUBLE_EQ(box.height, 2.0);
}

TEST(PrimitiveBarChart, BodyPressMovesTheChartThroughTheBar) {
  PrimitiveBarChart chart({0, 0, 200, 100}, {0.5, 0.8});
  Mover m;
  chart.into_mover(m, 0);
  const Rect t = chart.track_of(0);
  // inside the coloured bar, well below its top strip
  ASSERT_TRUE(m.catch_at({t.center().x, 90}, MouseButton::Left));
  EXPECT_EQ(m.caught()->object, &chart);
  m.move({t.center().x + 10, 95});
  EXPECT_EQ(chart.frame().rect, (Rect{10, 5, 200, 100}));
  EXPECT_EQ(chart.bars()[0]->track(), t.translated(10, 5));
  m.release();
  ASSERT_TRUE(m.catch_at({t.center().x + 10, chart.bars()[0]->top()}, MouseButton::Left));
  EXPECT_EQ(m.caught()->object, chart.bars()[0].get());
}
