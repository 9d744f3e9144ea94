#include <benchmark/benchmark.h>

#include <memory>

#include "homeoqm/errors.h"
#include "homeoqm/gg.h"

namespace homeoqm {
namespace {

const Presentation kF2 = Presentation::Free(2);
const Presentation kS2 = Presentation::Surface(2);

void BM_DehnReduce(benchmark::State& state) {
  Rng rng(1);
  std::vector<Word> words;
  for (int i = 0; i < 64; ++i) {
    const Word u = RandomReducedWord(rng, 4, state.range(0));
    words.push_back(u * SurfaceRelator(2) * u.Inverse() * RandomReducedWord(rng, 4, 6));
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(DehnReduce(words[i++ % words.size()], kS2));
}
BENCHMARK(BM_DehnReduce)->Arg(8)->Arg(32)->Arg(128);

void BM_BrooksHomogeneous(benchmark::State& state) {
  const QuasimorphismSpec spec(kF2, {{Parse("x1x2X1", kF2), 1.0}, {Parse("x1x1x2", kF2), 0.5}});
  Rng rng(2);
  const Word g = RandomReducedWord(rng, 2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spec.Homogeneous(g));
}
BENCHMARK(BM_BrooksHomogeneous)->Arg(16)->Arg(256);

void BM_GammaN1(benchmark::State& state) {
  const auto m = PolygonModel::Genus(2);
  Rng rng(3);
  const Homeo f = RandomHomeo(rng, m);
  const auto bp = Basepoint::Make(m, {{0.1, -0.15}});
  for (auto _ : state) {
    const Vec2 x = SampleUniform(rng, m, 0.01);
    try {
      benchmark::DoNotOptimize(GammaN1(f, x, bp, m));
    } catch (const DegenerateError&) {
    }
  }
}
BENCHMARK(BM_GammaN1);

void BM_GammaTorusN2(benchmark::State& state) {
  const auto m = PolygonModel::Torus();
  Rng rng(4);
  const Homeo f = RandomHomeo(rng, m);
  const auto bp = Basepoint::Make(m, {{0.3, 0.4}, {0.62, 0.71}});
  for (auto _ : state) {
    const auto x = SampleConfiguration(rng, m, 2);
    try {
      benchmark::DoNotOptimize(GammaTorusN2(f, x, bp, m));
    } catch (const DegenerateError&) {
    }
  }
}
BENCHMARK(BM_GammaTorusN2);

void BM_PsiMonteCarlo(benchmark::State& state) {
  const auto m = PolygonModel::Genus(2);
  const auto core = SideCore(m, 2, 0.5, 0.2);
  const Homeo f(std::make_shared<AnnulusTwist>(m, core, 0.05, AnnulusTwist::Tent(0.05, 0, 1)));
  const auto ctx = GgContext::Make(
      m, Basepoint::Make(m, {core[0].at}),
      QuasimorphismSpec(kF2, {{Parse("x1", kF2), 1.0}}, false, PreMap::kHandlebodyRetract));
  for (auto _ : state) {
    benchmark::DoNotOptimize(PsiMonteCarlo(ctx, f, 10000, 1, static_cast<int>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_PsiMonteCarlo)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace homeoqm

BENCHMARK_MAIN();
