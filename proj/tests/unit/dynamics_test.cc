#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "homeoqm/dynamics.h"
#include "homeoqm/errors.h"
#include "homeoqm/sampler.h"

namespace homeoqm {
namespace {

std::shared_ptr<const AnnulusTwist> SquareTwist(const PolygonModel& m, double peak) {
  std::vector<CoreVertex> core{{{0.3, 0.3}}, {{0.7, 0.3}}, {{0.7, 0.7}}, {{0.3, 0.7}}};
  return std::make_shared<AnnulusTwist>(m, core, 0.05, AnnulusTwist::Tent(0.05, peak));
}

TEST(AnnulusTwist, ShearAlongCore) {
  const auto m = PolygonModel::Torus();
  const auto tw = SquareTwist(m, 0.2);
  EXPECT_NEAR(tw->core_length(), 1.6, 1e-12);
  EXPECT_NEAR(tw->Profile(0.0), 0.2, 1e-15);
  EXPECT_NEAR(tw->Profile(0.025), 0.1, 1e-15);
  EXPECT_EQ(tw->Profile(0.06), 0.0);
  // a core point moves by h(0) along the core (counterclockwise square)
  const Vec2 y = tw->Apply({0.4, 0.3}, 1);
  EXPECT_NEAR(y.x, 0.6, 1e-12);
  EXPECT_NEAR(y.y, 0.3, 1e-12);
  const Vec2 z = tw->Apply({0.6, 0.3}, 1);
  EXPECT_NEAR(z.x, 0.7, 1e-12);
  EXPECT_NEAR(z.y, 0.4, 1e-12);
  // outside the tube nothing moves
  EXPECT_EQ(tw->Apply({0.5, 0.5}, 3).x, 0.5);
  EXPECT_FALSE(tw->InSupport({0.5, 0.5}));
  EXPECT_TRUE(tw->InSupport({0.5, 0.31}));
}

TEST(AnnulusTwist, PowersAndInverse) {
  const auto m = PolygonModel::Torus();
  const auto tw = SquareTwist(m, 0.37);
  const Vec2 x{0.45, 0.32};
  const Vec2 y2 = tw->Apply(tw->Apply(x, 1), 1);
  EXPECT_NEAR(Norm(tw->Apply(x, 2) - y2), 0.0, 1e-12);
  EXPECT_NEAR(Norm(tw->Apply(tw->Apply(x, 3), -3) - x), 0.0, 1e-12);
}

TEST(AnnulusTwist, FullLapFixesCore) {
  const auto m = PolygonModel::Torus();
  std::vector<CoreVertex> core{{{0.3, 0.3}}, {{0.7, 0.3}}, {{0.7, 0.7}}, {{0.3, 0.7}}};
  const AnnulusTwist tw(m, core, 0.05, AnnulusTwist::Tent(0.05, 0.0, 1.0));
  EXPECT_TRUE(tw.FixesExactly({0.3, 0.3}, 1));
  EXPECT_TRUE(tw.FixesExactly({0.5, 0.3}, 7));
  EXPECT_FALSE(tw.FixesExactly({0.5, 0.31}, 1));
  EXPECT_TRUE(tw.FixesExactly({0.5, 0.5}, 1));
}

TEST(AnnulusTwist, RejectsBadCores) {
  const auto m = PolygonModel::Torus();
  // sharp turn
  EXPECT_THROW(AnnulusTwist(m, {{{0.2, 0.2}}, {{0.8, 0.2}}, {{0.3, 0.25}}}, 0.02,
                            AnnulusTwist::Tent(0.02, 0.1)),
               InputError);
  // tube too fat for its core
  EXPECT_THROW(AnnulusTwist(m, {{{0.3, 0.3}}, {{0.7, 0.3}}, {{0.7, 0.7}}, {{0.3, 0.7}}}, 0.3,
                            AnnulusTwist::Tent(0.3, 0.1)),
               InputError);
  // profile must vanish at the tube edge
  EXPECT_THROW(AnnulusTwist(m, {{{0.3, 0.3}}, {{0.7, 0.3}}, {{0.7, 0.7}}, {{0.3, 0.7}}}, 0.05,
                            {{-0.05, 0.1}, {0.05, 0.0}}),
               InputError);
}

TEST(AnnulusTwist, CoreAcrossSide) {
  const auto m = PolygonModel::Genus(2);
  const auto core = SideCore(m, 2, 0.5, 0.2);
  const AnnulusTwist tw(m, core, 0.05, AnnulusTwist::Tent(0.05, 0.0, 1.0));
  EXPECT_EQ(tw.CoreCrossings(), std::vector<int>{2});
  EXPECT_TRUE(tw.FixesExactly(core[0].at, 1));
}

TEST(DiskMap, RotatesCentreCircles) {
  const auto m = PolygonModel::Torus();
  const DiskMap d(m, {0.5, 0.5}, 0.2, std::numbers::pi / 2);
  // at radius 0.1 the angle is pi/4
  const Vec2 y = d.Apply({0.6, 0.5}, 1);
  EXPECT_NEAR(y.x, 0.5 + 0.1 * std::cos(std::numbers::pi / 4), 1e-12);
  EXPECT_NEAR(y.y, 0.5 + 0.1 * std::sin(std::numbers::pi / 4), 1e-12);
  EXPECT_EQ(d.Apply({0.5, 0.5}, 1).x, 0.5);
  EXPECT_TRUE(d.FixesExactly({0.5, 0.5}, 1));
  EXPECT_TRUE(d.FixesExactly({0.9, 0.9}, 1));
  EXPECT_NEAR(Norm(d.Apply(d.Apply({0.55, 0.42}, 3), -3) - Vec2{0.55, 0.42}), 0.0, 1e-12);
}

TEST(Translation, PeriodicIsExact) {
  const auto m = PolygonModel::Torus();
  const Homeo t(std::make_shared<Translation>(m, Vec2{0.25, 0.5}));
  const Vec2 x{0.3, 0.4};
  EXPECT_TRUE(t.Power(4).FixesExactly(x));
  const Vec2 y = t.Power(4).Apply(x);
  EXPECT_EQ(y.x, x.x);
  EXPECT_EQ(y.y, x.y);
  EXPECT_THROW(Translation(PolygonModel::Genus(2), {0.1, 0.0}), InputError);
}

TEST(Homeo, CompositionOrderAndInverse) {
  const auto m = PolygonModel::Torus();
  const Homeo t(std::make_shared<Translation>(m, Vec2{0.1, 0.0}));
  const Homeo d(std::make_shared<DiskMap>(m, Vec2{0.5, 0.5}, 0.3, 1.0));
  const Vec2 x{0.35, 0.45};
  const Homeo fg = d * t;  // apply t, then d
  EXPECT_NEAR(Norm(fg.Apply(x) - d.Apply(t.Apply(x))), 0.0, 1e-15);
  EXPECT_NEAR(Norm(fg.Inverse().Apply(fg.Apply(x)) - x), 0.0, 1e-12);
  EXPECT_TRUE(Homeo::Identity().is_identity());
  EXPECT_EQ(fg.Power(0).factors().size(), 0u);
  EXPECT_EQ(d.Power(5).factors().size(), 1u);
  EXPECT_EQ(fg.Power(3).factors().size(), 6u);
}

TEST(Homeo, TrajectoryEndsAtImage) {
  const auto m = PolygonModel::Genus(2);
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Homeo f = RandomHomeo(rng, m);
    const Vec2 x = SampleUniform(rng, m, 0.01);
    Vec2 y;
    try {
      y = f.Apply(x);
    } catch (const DegenerateError&) {
      continue;
    }
    const PathTrace tr = f.Trajectory(x, 8).Flatten();
    if (tr.empty()) {
      EXPECT_NEAR(Norm(y - x), 0.0, 1e-12);
      continue;
    }
    EXPECT_NEAR(Norm(tr.pieces.front().from - x), 0.0, 1e-9);
    EXPECT_NEAR(SurfaceDistance(m, tr.pieces.back().to, y), 0.0, 1e-9);
  }
}

TEST(MeasureCheck, SampledMapsPreserveArea) {
  const auto m = PolygonModel::Torus();
  Rng rng(8);
  for (int i = 0; i < 3; ++i) {
    const Homeo f = RandomHomeo(rng, m);
    const auto rep = MeasureCheck(f, m, 3, 4000, 1);
    EXPECT_TRUE(rep.pass) << f.Describe() << " z=" << rep.max_abs_z;
  }
}

TEST(Grid, NestedUnderDoubling) {
  const auto m = PolygonModel::Torus();
  const auto a = GridPoints(m, 4);
  const auto b = GridPoints(m, 8);
  EXPECT_EQ(a.size(), 16u);
  EXPECT_EQ(b.size(), 64u);
  for (const Vec2& p : a) {
    bool found = false;
    for (const Vec2& q : b) found = found || (p.x == q.x && p.y == q.y);
    EXPECT_TRUE(found);
  }
}

TEST(Recurrence, RationalTranslationReturns) {
  const auto m = PolygonModel::Torus();
  const Homeo t(std::make_shared<Translation>(m, Vec2{1.0 / 3.0, 0.5}));
  const auto rep = RecurrenceProbe(t, m, 8, 8);
  EXPECT_EQ(rep.best_k, 6);
  EXPECT_LT(rep.best_distance, 1e-12);
  EXPECT_GT(D0Distance(t, Homeo(), m, 8), 0.1);
}

}  // namespace
}  // namespace homeoqm
