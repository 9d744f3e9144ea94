#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "homeoqm/errors.h"
#include "homeoqm/gg.h"

namespace homeoqm {
namespace {

const Presentation kF2 = Presentation::Free(2);

GgContext Genus2PushContext(double peak_laps, std::shared_ptr<const AnnulusTwist>* twist) {
  auto m = PolygonModel::Genus(2);
  const auto core = SideCore(m, 2, 0.5, 0.2);
  *twist = std::make_shared<AnnulusTwist>(m, core, 0.05, AnnulusTwist::Tent(0.05, 0, peak_laps));
  QuasimorphismSpec qm(kF2, {{Parse("x1", kF2), 1.0}}, false, PreMap::kHandlebodyRetract);
  return GgContext::Make(m, Basepoint::Make(m, {core[0].at}), qm);
}

TEST(Context, Validation) {
  const auto t = PolygonModel::Torus();
  const QuasimorphismSpec nonzero(kF2, {{Parse("x1x2", kF2), 1.0}}, false,
                                  PreMap::kTorusRelative);
  EXPECT_THROW(GgContext::Make(t, Basepoint::Make(t, {{0.5, 0.5}}), nonzero), InputError);
  EXPECT_NO_THROW(GgContext::Make(t, Basepoint::Make(t, {{0.5, 0.5}, {0.2, 0.2}}), nonzero));
  EXPECT_THROW(GgContext::Make(PolygonModel::Genus(2),
                               Basepoint::Make(PolygonModel::Genus(2), {{0.1, 0.1}}), nonzero),
               InputError);
}

TEST(PsiZ, PointPushIsLinearInPowers) {
  std::shared_ptr<const AnnulusTwist> tw;
  const auto ctx = Genus2PushContext(1.0, &tw);
  const Homeo f(tw);
  EXPECT_EQ(PsiZ(ctx, f), 1.0);
  for (long k = 1; k <= 10; ++k) EXPECT_EQ(PsiZ(ctx, f.Power(k)), static_cast<double>(k));
  const auto cert = CertifyUndistorted(ctx, f);
  EXPECT_EQ(cert.verdict, Verdict::kUndistorted);
  EXPECT_EQ(CertifyUndistorted(ctx, f.Inverse()).verdict, Verdict::kInconclusive);
}

TEST(Psi, MonteCarloAgreesWithClosedForm) {
  std::shared_ptr<const AnnulusTwist> tw;
  const auto ctx = Genus2PushContext(1.0, &tw);
  const Homeo f(tw);
  const double oracle = PointPushPsiOracle(ctx, *tw);
  const auto est = PsiMonteCarlo(ctx, f, 40000, 3, 2);
  EXPECT_NEAR(est.mean, oracle, 4 * est.std_error);
  EXPECT_EQ(est.rejected, 0);
  EXPECT_NEAR(PsiQuadrature(ctx, f, 256, 2), oracle, 0.1 * std::abs(oracle));
}

TEST(Psi, DeterministicAcrossWorkers) {
  std::shared_ptr<const AnnulusTwist> tw;
  const auto ctx = Genus2PushContext(0.6, &tw);
  const Homeo f(tw);
  const auto a = PsiMonteCarlo(ctx, f, 5000, 9, 1);
  const auto b = PsiMonteCarlo(ctx, f, 5000, 9, 3);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(Psi, DiskMapIsZero) {
  std::shared_ptr<const AnnulusTwist> tw;
  const auto ctx = Genus2PushContext(1.0, &tw);
  const Homeo d(std::make_shared<DiskMap>(ctx.model, Vec2{0.1, -0.2}, 0.3, 5.0));
  const auto est = PsiMonteCarlo(ctx, d, 2000, 1);
  EXPECT_EQ(est.mean, 0.0);
}

TEST(PsiBar, ConvergesAtTheDefectRate) {
  std::shared_ptr<const AnnulusTwist> tw;
  const auto ctx = Genus2PushContext(0.7, &tw);
  const auto rep = PsiBar(ctx, Homeo(tw), 8, 4000, 2);
  EXPECT_EQ(rep.per_k.size(), 8u);
  EXPECT_TRUE(rep.rate_violations.empty());
}

TEST(SemiBound, PointwiseScanPasses) {
  const auto t = PolygonModel::Torus();
  const QuasimorphismSpec qm(kF2, {{Parse("x1x2", kF2), 1.0}}, false, PreMap::kTorusRelative);
  const auto ctx = GgContext::Make(t, Basepoint::Make(t, {{0.3, 0.4}, {0.62, 0.71}}), qm);
  Rng rng(12);
  const Homeo f = RandomHomeo(rng, t);
  SemiBoundOptions o;
  o.g_samples = 60;
  o.grid = 4;
  o.defect_trials = 2000;
  const auto rep = SemiBoundScan(ctx, f, o);
  EXPECT_TRUE(rep.pass());
  EXPECT_GE(rep.b_hat, rep.b_hat_grid);
  EXPECT_GE(rep.d_hat, rep.d_hat_sampled);
}

TEST(Norm, EstimateIsMaxOverSet) {
  std::shared_ptr<const AnnulusTwist> tw;
  const auto ctx = Genus2PushContext(1.0, &tw);
  const Homeo f(tw);
  std::vector<Homeo> S{Homeo(), f, f.Power(2)};
  const auto est = EstimateNorm([&](const Homeo& h) { return PsiZ(ctx, h); }, f, S);
  EXPECT_EQ(est.value, 1.0);
  EXPECT_EQ(est.set_size, 3);
  EXPECT_EQ(EstimateNorm([&](const Homeo& h) { return PsiZ(ctx, h); }, f, {}).witness, -1);
}

TEST(Growth, RatiosForPointPush) {
  std::shared_ptr<const AnnulusTwist> tw;
  const auto ctx = Genus2PushContext(1.0, &tw);
  const auto g = GrowthEstimate(ctx, Homeo(tw).Power(2), 6);
  for (double r : g.ratios) EXPECT_EQ(r, 2.0);
}

}  // namespace
}  // namespace homeoqm
