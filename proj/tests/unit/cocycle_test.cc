#include <gtest/gtest.h>

#include <memory>

#include "homeoqm/cocycle.h"
#include "homeoqm/errors.h"
#include "homeoqm/sampler.h"

namespace homeoqm {
namespace {

TEST(Gamma, IdentityIsTrivial) {
  for (auto m : {PolygonModel::Torus(), PolygonModel::Genus(2)}) {
    const auto bp = Basepoint::Make(m, {{0.1, 0.05}});
    const Word w = GammaN1(Homeo(), {0.2, 0.3}, bp, m);
    EXPECT_TRUE(w.empty());
  }
}

TEST(Gamma, TorusTranslationByLatticeVector) {
  const auto m = PolygonModel::Torus();
  const auto bp = Basepoint::Make(m, {{0.5, 0.5}});
  const Homeo t(std::make_shared<Translation>(m, Vec2{0.5, 0.0}), 2);
  const Word w = GammaN1(t, {0.2, 0.3}, bp, m);
  EXPECT_EQ(Format(w, m.word_presentation()), "x1");
  const auto lat = LatticeClass(w);
  EXPECT_EQ(lat[0], 1);
  EXPECT_EQ(lat[1], 0);
}

TEST(Gamma, PointPushReadsTheSideLetter) {
  const auto m = PolygonModel::Genus(2);
  const auto core = SideCore(m, 2, 0.5, 0.2);
  const Homeo f(std::make_shared<AnnulusTwist>(m, core, 0.05, AnnulusTwist::Tent(0.05, 0, 1)));
  const Vec2 z = core[0].at;
  const auto bp = Basepoint::Make(m, {z});
  EXPECT_EQ(Format(GammaN1(f, z, bp, m), m.word_presentation()), "a1");
  EXPECT_EQ(Format(GammaN1(f.Power(3), z, bp, m), m.word_presentation()), "a1a1a1");
  EXPECT_EQ(Format(GammaN1(f.Inverse(), z, bp, m), m.word_presentation()), "A1");
}

TEST(Gamma, RejectsPointsOffTheCell) {
  const auto m = PolygonModel::Torus();
  const auto bp = Basepoint::Make(m, {{0.5, 0.5}});
  EXPECT_THROW(GammaN1(Homeo(), {1.0, 0.3}, bp, m), DegenerateError);
}

TEST(Gamma, TorusPairTrivialAndCentral) {
  const auto m = PolygonModel::Torus();
  const auto bp = Basepoint::Make(m, {{0.4, 0.45}, {0.6, 0.55}});
  const Homeo d(std::make_shared<DiskMap>(m, Vec2{0.5, 0.5}, 0.3, 0.0));
  const TorusBraid id = GammaTorusN2(d, bp.z, bp, m);
  EXPECT_EQ(id, TorusBraid{});
  const TorusBraid b = GammaTorusN2(
      Homeo(std::make_shared<Translation>(m, Vec2{0.25, 0.0}), 4), bp.z, bp, m);
  EXPECT_EQ(b.central[0], 1);
  EXPECT_EQ(b.central[1], 0);
  EXPECT_TRUE(b.rel.empty());
}

TEST(Cocycle, IdentityOnRandomTriples) {
  for (auto [m, n] : {std::pair{PolygonModel::Torus(), 1}, {PolygonModel::Torus(), 2},
                      {PolygonModel::Genus(2), 1}}) {
    const std::vector<Vec2> z =
        n == 1 ? std::vector<Vec2>{{0.3, 0.4}} : std::vector<Vec2>{{0.3, 0.4}, {0.62, 0.71}};
    const auto rep = CocycleBatch(m, Basepoint::Make(m, z), 100, 17);
    EXPECT_TRUE(rep.pass()) << m.name() << " n=" << n;
    EXPECT_LT(rep.degenerate_rate(), 0.05);
  }
}

TEST(Cocycle, BatchIsWorkerIndependent) {
  const auto m = PolygonModel::Genus(2);
  const auto bp = Basepoint::Make(m, {{0.1, 0.2}});
  const auto a = CocycleBatch(m, bp, 60, 3, {}, 1);
  const auto b = CocycleBatch(m, bp, 60, 3, {}, 4);
  EXPECT_EQ(a.checked, b.checked);
  EXPECT_EQ(a.equal, b.equal);
  EXPECT_EQ(a.degenerate, b.degenerate);
}

TEST(GammaValue, ProductPowerEquality) {
  const auto m = PolygonModel::Genus(2);
  const Presentation p = m.word_presentation();
  const GammaValue a = Parse("a1b1", p);
  EXPECT_TRUE(GammaEqual(GammaPower(a, 3), GammaProduct(a, GammaProduct(a, a)), m));
  EXPECT_TRUE(GammaIsTrivial(GammaValue(SurfaceRelator(2)), m));
  EXPECT_EQ(FormatGamma(GammaValue(ParseTorusBraid("(1,0)|x1")), PolygonModel::Torus()),
            "(1,0)|x1");
}

}  // namespace
}  // namespace homeoqm
