// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "homeoqm/errors.h"
#include "homeoqm/gg.h"
#include "homeoqm_cli/cli.h"
#include "homeoqm_cli/scene.h"

namespace homeoqm {
namespace {

using cli::LoadSceneFile;
using cli::Scene;

const std::string kScenes = HOMEOQM_SCENES_DIR;
const Presentation kF2 = Presentation::Free(2);

int Workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

double Seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. gamma(fg, x) == gamma(f, g(x)) gamma(g, x) on random triples.
Outcome CocycleIdentity() {
  struct Regime {
    PolygonModel model;
    std::vector<Vec2> z;
  };
  const std::vector<Regime> regimes{
      {PolygonModel::Torus(), {{0.3, 0.4}}},
      {PolygonModel::Torus(), {{0.3, 0.4}, {0.62, 0.71}}},
      {PolygonModel::Genus(2), {{0.1, -0.15}}},
  };
  Outcome o{true, ""};
  for (const auto& r : regimes) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = CocycleBatch(r.model, Basepoint::Make(r.model, r.z), 1000, 2024, {}, Workers());
    const double secs = Seconds(t0);
    const bool ok = rep.pass() && rep.degenerate_rate() < 0.01 && secs < 120.0;
    o.pass = o.pass && ok;
    o.detail += Fmt("%s n=%zu: %ld/%ld equal, degenerate %.2f%%, %.1fs; ", r.model.name().c_str(),
                    r.z.size(), rep.equal, rep.checked, 100 * rep.degenerate_rate(), secs);
  }
  return o;
}

const std::vector<std::string> kPushScenes{
    "genus2_push_a1.json",     "genus2_push_a1a2.json", "genus2_push_a2_double.json",
    "torus_pair_push_x1.json", "torus_pair_push_x2.json",
};

// 2. Psi_z(f^k) == k Psi_z(f) exactly for point-pushes fixing z.
Outcome FixedPointLinearity() {
  Outcome o{true, ""};
  for (const auto& name : kPushScenes) {
    const Scene s = LoadSceneFile(kScenes + "/" + name);
    const Homeo& f = s.Map("f");
    bool fixed = true;
    for (const Vec2& z : s.ctx.basepoint.z) fixed = fixed && f.FixesExactly(z);
    const double v = PsiZ(s.ctx, f);
    long bad = 0;
    for (long k = 1; k <= 20; ++k) bad += PsiZ(s.ctx, f.Power(k)) != k * v;
    o.pass = o.pass && fixed && bad == 0 && v != 0.0;
    o.detail += Fmt("%s Psi_z=%g mismatches=%ld; ", name.c_str(), v, bad);
  }
  return o;
}

// Signed count of crossings of the a1 side pair by the closed core polyline,
// from raw segment intersections. Outward through side 2 counts +1, outward
// through side 0 counts -1.
long IndependentA1CrossingCount(const PolygonModel& m, std::span<const CoreVertex> core) {
  auto crosses = [&](Vec2 a, Vec2 b, int side) {
    const Vec2 p = m.vertex(side), q = m.vertex(side + 1);
    const double d1 = Cross(q - p, a - p), d2 = Cross(q - p, b - p);
    const double d3 = Cross(b - a, p - a), d4 = Cross(b - a, q - a);
    return d1 * d2 < 0 && d3 * d4 < 0;
  };
  long count = 0;
  for (std::size_t i = 0; i < core.size(); ++i) {
    Vec2 a = core[i].at;
    const Vec2 b = core[(i + 1) % core.size()].at;
    if (core[i].via >= 0) {
      // develop b across the via side: the leg runs from a to the preimage
      // of b under the side transport
      const Vec2 b_dev = m.transport(core[i].via).Inverse()(b);
      for (int side : {0, 2}) count += crosses(a, b_dev, side) ? (side == 2 ? 1 : -1) : 0;
    } else {
      for (int side : {0, 2}) count += crosses(a, b, side) ? (side == 2 ? 1 : -1) : 0;
    }
  }
  return count;
}

// 3. Point-push along a1 is certified undistorted with phi(gamma) = 1.
Outcome Certificate() {
  const Scene s = LoadSceneFile(kScenes + "/genus2_push_a1.json");
  const Homeo& f = s.Map("f");
  const auto tw = std::dynamic_pointer_cast<const AnnulusTwist>(f.factors()[0].map);
  const long laps = 1;
  const double oracle = static_cast<double>(laps * IndependentA1CrossingCount(s.ctx.model, tw->core()));
  const auto c = CertifyUndistorted(s.ctx, f);
  Outcome o;
  o.pass = c.phi == oracle && oracle == 1.0 && c.verdict == Verdict::kUndistorted;
  o.detail = Fmt("gamma=%s phi=%g oracle=%g verdict=%s", c.gamma.c_str(), c.phi, oracle,
                 ToString(c.verdict).c_str());
  return o;
}

// 4. max |delta Psi_z(f, g)| <= 2 B_f + D_phi over 1000 sampled g.
Outcome SemiBoundedness() {
  Outcome o{true, ""};
  for (const std::string name : {"torus_pair.json", "genus2_push_a1.json", "genus2_push_a1a2.json"}) {
    const Scene s = LoadSceneFile(kScenes + "/" + name);
    SemiBoundOptions opt;
    opt.g_samples = 1000;
    opt.grid = 8;
    opt.seed = 4;
    opt.workers = Workers();
    const auto rep = SemiBoundScan(s.ctx, s.Map("f"), opt);
    o.pass = o.pass && rep.pass();
    o.detail += Fmt("%s max=%g bound=%g (B=%g grid-only %s, D=%g, degenerate %ld); ",
                    name.c_str(), rep.max_delta, rep.bound, rep.b_hat,
                    rep.pass_grid_only() ? "pass" : "fail", rep.d_hat, rep.degenerate);
  }
  return o;
}

// 5. Torus braids: symmetrized specs vanish on commutator powers, some
// symmetrized spec is non-zero somewhere, central coordinates are invisible.
Outcome TorusSymmetry() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Word> patterns;
  for (int len = 1; len <= 4; ++len) {
    for (const Word& w : EnumerateReducedWords(2, len)) patterns.push_back(w);
  }
  const Word comm = Parse("x1x2X1X2", kF2);
  long vanish_fail = 0;
  for (const Word& p : patterns) {
    const QuasimorphismSpec spec(kF2, {{p, 1.0}}, true);
    for (long k = -10; k <= 10; ++k) vanish_fail += spec.Homogeneous(comm.Power(k)) != 0.0;
  }
  // brute force over elements by increasing length: first (pattern, element)
  // pair with a non-zero symmetrized value
  std::string witness;
  std::vector<QuasimorphismSpec> specs;
  for (const Word& p : patterns) specs.emplace_back(kF2, std::vector<BrooksPattern>{{p, 1.0}}, true);
  for (int len = 1; len <= 8 && witness.empty(); ++len) {
    for (const Word& g : EnumerateReducedWords(2, len)) {
      for (std::size_t i = 0; i < specs.size() && witness.empty(); ++i) {
        const double v = specs[i].Homogeneous(g);
        if (v != 0.0) {
          witness = Format(patterns[i], kF2) + " on " + Format(g, kF2) + " = " + Fmt("%g", v);
        }
      }
      if (!witness.empty()) break;
    }
  }
  const double search_secs = Seconds(t0);
  // central-coordinate invariance
  const QuasimorphismSpec rel(kF2, {{Parse("x1x2", kF2), 1.0}, {Parse("x1X2x2", kF2), -0.25}},
                              false, PreMap::kTorusRelative);
  Rng rng(55);
  std::vector<TorusBraid> gs, cs;
  for (int i = 0; i < 1000; ++i) {
    gs.push_back({{static_cast<long>(rng.Between(-5, 5)), static_cast<long>(rng.Between(-5, 5))},
                  RandomReducedWord(rng, 2, rng.Below(12))});
  }
  long central_fail = 0;
  for (int i = 0; i < 1000; ++i) {
    const TorusBraid c = TorusBraid::Central(rng.Between(-9, 9), rng.Between(-9, 9));
    central_fail += rel.Homogeneous(gs[i] * c) != rel.Homogeneous(gs[i]);
  }
  Outcome o;
  o.pass = vanish_fail == 0 && !witness.empty() && search_secs < 60.0 && central_fail == 0;
  o.detail = Fmt("%zu symmetrized specs x 21 powers: %ld non-zero; witness: %s (%.2fs); "
                 "central invariance failures %ld/1000",
                 patterns.size(), vanish_fail, witness.c_str(), search_secs, central_fail);
  return o;
}

// 6. Monte Carlo Psi of a point-push matches the closed-form shear integral.
Outcome PointPushPsi() {
  const Scene s = LoadSceneFile(kScenes + "/genus2_push_a1.json");
  const Homeo& f = s.Map("f");
  const auto tw = std::dynamic_pointer_cast<const AnnulusTwist>(f.factors()[0].map);
  // tent of height L and half-width r: integral of h over the tube is L * r
  double area = 0.0;
  const auto v = s.ctx.model.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) area += Cross(v[i], v[(i + 1) % v.size()]) / 2;
  const double phi_c = 1.0;  // x1 on the retract of a1
  const double analytic = phi_c * tw->core_length() * tw->radius() / area;
  const double closed_form = PointPushPsiOracle(s.ctx, *tw);
  const auto t0 = std::chrono::steady_clock::now();
  const auto est = PsiMonteCarlo(s.ctx, f, 100000, 6, Workers());
  const double secs = Seconds(t0);
  const double quad = PsiQuadrature(s.ctx, f, 512, Workers());
  Outcome o;
  const double z = std::abs(est.mean - analytic) / est.std_error;
  o.pass = z <= 3.0 && std::abs(closed_form - analytic) < 1e-12 * std::abs(analytic) &&
           std::abs(quad - analytic) < 0.02 * std::abs(analytic) && secs < 60.0;
  o.detail = Fmt("MC %.6f +- %.6f vs analytic %.6f (%.2f SE, %.1fs); quadrature(512^2) %.6f",
                 est.mean, est.std_error, analytic, z, secs, quad);
  return o;
}

// 7. Small twists have grid-bounded phi(gamma), and disk maps have Psi = 0.
Outcome C0Smallness() {
  const auto m = PolygonModel::Genus(2);
  const QuasimorphismSpec qm(kF2, {{Parse("x1x2", kF2), 1.0}, {Parse("x1x1X2", kF2), 0.5}}, false,
                             PreMap::kHandlebodyRetract);
  const auto ctx = GgContext::Make(m, Basepoint::Make(m, {{0.1, -0.15}}), qm);
  const double thr = SystoleThreshold(m, 1);
  Rng rng(77);
  long passed = 0;
  double worst_margin = 1e300;
  for (int i = 0; i < 10; ++i) {
    const auto tw = RandomTwist(rng, m, 0.9 * thr);
    const auto rep = C0SmallnessCheck(ctx, Homeo(tw), tw->MaxAbsProfile(), 24, 100 + i, Workers());
    passed += rep.pass() && tw->MaxAbsProfile() < thr;
    worst_margin = std::min(worst_margin, rep.family_max + rep.d_hat - rep.grid_max);
  }
  const Homeo disk(std::make_shared<DiskMap>(m, Vec2{0.2, 0.1}, 0.35, 9.0));
  const auto psi_disk = PsiMonteCarlo(ctx, disk, 20000, 3, Workers());
  Outcome o;
  o.pass = passed == 10 && psi_disk.mean == 0.0;
  o.detail = Fmt("%ld/10 twists within bound (threshold %.4f, min slack %.3g); Psi(disk)=%g",
                 passed, thr, worst_margin, psi_disk.mean);
  return o;
}

// 8. |phi(g^N)/N - phibar(g)| <= D/N.
Outcome HomogenizationRate() {
  const QuasimorphismSpec spec(kF2, {{Parse("x1x2", kF2), 1.0}, {Parse("x1x1X2", kF2), 0.5}});
  const double d = EstimateDefect(spec, 200000, 12, 8, DefectMode::kRaw, Workers()).max_observed;
  Rng rng(88);
  long ok = 0, total = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Word g = RandomReducedWord(rng, 2, 1 + rng.Below(12));
    const double bar = spec.Homogeneous(g);
    for (long N : {8, 16, 32, 64}) {
      const double gap = std::abs(spec.Raw(g.Power(N)) / N - bar);
      ok += gap <= d / N + 1e-12;
      ++total;
      worst = std::max(worst, gap * N);
    }
  }
  Outcome o;
  o.pass = ok == total;
  o.detail = Fmt("%ld/%ld within D/N (D=%g, max N*gap=%g)", ok, total, d, worst);
  return o;
}

std::string RunToString(const std::vector<std::string>& args, int* code) {
  std::vector<const char*> argv{"homeoqm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  *code = cli::RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str() + err.str();
}

// 9. Same seed, 1 vs 4 workers: byte-identical output for every subcommand.
Outcome Determinism() {
  const std::string torus = kScenes + "/torus_pair.json";
  const std::string genus = kScenes + "/genus2_push_a1.json";
  const std::vector<std::vector<std::string>> runs{
      {"gamma", torus},
      {"eval-qm", torus, "--samples", "3000"},
      {"psi", torus, "--samples", "5000"},
      {"psi", genus, "--samples", "5000"},
      {"psi-bar", genus, "--samples", "2000", "--k-max", "6"},
      {"psi-z", torus},
      {"check-cocycle", torus, "--samples", "200"},
      {"check-semibound", genus},
      {"norm-est", torus},
      {"certify", genus},
      {"recurrence", torus, "--k-max", "6"},
      {"selftest", torus},
  };
  Outcome o{true, ""};
  long identical = 0;
  for (const auto& r : runs) {
    std::vector<std::string> a = r, b = r, c = r;
    a.insert(a.end(), {"--seed", "17", "--workers", "1"});
    b.insert(b.end(), {"--seed", "17", "--workers", "4"});
    c.insert(c.end(), {"--seed", "17", "--workers", "4"});
    int ca = 0, cb = 0, cc = 0;
    const std::string oa = RunToString(a, &ca), ob = RunToString(b, &cb), oc = RunToString(c, &cc);
    const bool same = oa == ob && ob == oc && ca == cb && cb == cc && !oa.empty();
    identical += same;
    if (!same) o.detail += r[0] + " differs; ";
  }
  o.pass = identical == static_cast<long>(runs.size());
  o.detail += Fmt("%ld/%zu subcommand runs byte-identical across 1 and 4 workers", identical,
                  runs.size());
  return o;
}

}  // namespace
}  // namespace homeoqm

int main() {
  using homeoqm::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"cocycle identity", homeoqm::CocycleIdentity},
      {"fixed-point linearity", homeoqm::FixedPointLinearity},
      {"undistortedness certificate", homeoqm::Certificate},
      {"semi-boundedness", homeoqm::SemiBoundedness},
      {"torus symmetrized specs", homeoqm::TorusSymmetry},
      {"point-push Psi", homeoqm::PointPushPsi},
      {"C0-smallness", homeoqm::C0Smallness},
      {"homogenization rate", homeoqm::HomogenizationRate},
      {"determinism", homeoqm::Determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
