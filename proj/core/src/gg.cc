#include "homeoqm/gg.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "homeoqm/errors.h"
#include "homeoqm/parallel.h"

namespace homeoqm {
namespace {

constexpr long kChunk = 1024;
constexpr int kMaxRedraws = 10000;

Word BaseWord(const QuasimorphismSpec& spec, const GammaValue& v) {
  if (const Word* w = std::get_if<Word>(&v)) return spec.ToBase(*w);
  return std::get<TorusBraid>(v).rel;
}

Vec2 StratifiedPoint(Rng& rng, const PolygonModel& model, long index, long samples) {
  const long m = std::max<long>(1, static_cast<long>(std::sqrt(static_cast<double>(samples))));
  const long cell = index % (m * m);
  const double cx = static_cast<double>(cell % m);
  const double cy = static_cast<double>(cell / m);
  const Vec2 lo = model.box_min();
  const Vec2 size = model.box_max() - lo;
  for (int attempt = 0; attempt < 32; ++attempt) {
    const Vec2 p{lo.x + size.x * (cx + rng.Uniform()) / m, lo.y + size.y * (cy + rng.Uniform()) / m};
    if (model.Contains(p) && model.DistanceToNearestCorner(p) > model.corner_exclusion_radius()) {
      return p;
    }
  }
  return SampleUniform(rng, model);
}

bool IsDegenerate(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const DegenerateError&) {
    return true;
  } catch (const BoundaryError&) {
    return true;
  } catch (...) {
    return false;
  }
}

}  // namespace

GgContext GgContext::Make(PolygonModel model, Basepoint basepoint, QuasimorphismSpec qm,
                          int resolution) {
  if (resolution < 2) throw InputError("resolution must be at least 2");
  const bool zero = qm.terms().empty();
  if (model.is_torus() && basepoint.n == 1) {
    if (!zero) {
      throw InputError(
          "on the torus with one point the braid group is abelian and contains its "
          "centre; only the zero quasimorphism vanishes there (use n = 2)");
    }
  } else if (model.is_torus()) {
    if (qm.pre_map() != PreMap::kTorusRelative || qm.base() != Presentation::Free(2)) {
      throw InputError(
          "two-point torus configurations need a quasimorphism on F_2 with "
          "pre_map torus_relative");
    }
  } else if (!zero && (qm.pre_map() != PreMap::kHandlebodyRetract ||
                       qm.base() != Presentation::Free(model.genus()))) {
    throw InputError("genus-" + std::to_string(model.genus()) +
                     " surfaces need a quasimorphism on F_" + std::to_string(model.genus()) +
                     " with pre_map handlebody_retract");
  }
  return GgContext{std::move(model), std::move(basepoint), std::move(qm), resolution};
}

double EvaluateQm(const QuasimorphismSpec& spec, const GammaValue& value) {
  if (spec.terms().empty()) return 0.0;
  if (const Word* w = std::get_if<Word>(&value)) return spec.Homogeneous(*w);
  return spec.Homogeneous(std::get<TorusBraid>(value));
}

double PhiGamma(const GgContext& ctx, const Homeo& f, std::span<const Vec2> x) {
  return EvaluateQm(ctx.qm, Gamma(f, x, ctx.basepoint, ctx.model, ctx.resolution));
}

PsiEstimate PsiMonteCarlo(const GgContext& ctx, const Homeo& f, long samples,
                          std::uint64_t seed, int workers, bool stratified) {
  if (samples < 1) throw InputError("samples must be positive");
  struct Acc {
    double sum = 0.0;
    double sumsq = 0.0;
    long rejected = 0;
  };
  const long chunks = (samples + kChunk - 1) / kChunk;
  const int n = ctx.basepoint.n;
  const auto parts = ParallelMap<Acc>(static_cast<std::size_t>(chunks), workers, [&](std::size_t c) {
    Rng rng(DeriveSeed(seed, c));
    Acc acc;
    const long begin = static_cast<long>(c) * kChunk;
    const long end = std::min(samples, begin + kChunk);
    for (long i = begin; i < end; ++i) {
      for (int attempt = 0;; ++attempt) {
        if (attempt > kMaxRedraws) throw DegenerateError("almost every sample is degenerate");
        std::vector<Vec2> x;
        if (stratified) {
          x.push_back(StratifiedPoint(rng, ctx.model, i, samples));
          while (static_cast<int>(x.size()) < n) {
            const Vec2 p = SampleUniform(rng, ctx.model);
            if (p != x.back()) x.push_back(p);
          }
        } else {
          x = SampleConfiguration(rng, ctx.model, n);
        }
        try {
          const double v = PhiGamma(ctx, f, x);
          acc.sum += v;
          acc.sumsq += v * v;
          break;
        } catch (...) {
          if (!IsDegenerate(std::current_exception())) throw;
          ++acc.rejected;
        }
      }
    }
    return acc;
  });
  PsiEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.stratified = stratified;
  double sum = 0.0;
  double sumsq = 0.0;
  for (const Acc& a : parts) {
    sum += a.sum;
    sumsq += a.sumsq;
    est.rejected += a.rejected;
  }
  const double N = static_cast<double>(samples);
  est.mean = sum / N;
  if (samples > 1) {
    const double var = std::max(0.0, (sumsq - N * est.mean * est.mean) / (N - 1.0));
    est.std_error = std::sqrt(var / N);
  }
  est.rejection_warning = est.rejected > 0.01 * N;
  return est;
}

double PsiQuadrature(const GgContext& ctx, const Homeo& f, int density, int workers) {
  if (ctx.basepoint.n != 1) throw InputError("quadrature is implemented for one point");
  const Vec2 lo = ctx.model.box_min();
  const Vec2 size = ctx.model.box_max() - lo;
  struct Acc {
    double sum = 0.0;
    long count = 0;
  };
  const auto rows = ParallelMap<Acc>(static_cast<std::size_t>(density), workers, [&](std::size_t i) {
    Acc acc;
    for (int j = 0; j < density; ++j) {
      const Vec2 p{lo.x + size.x * (i + 0.5) / density, lo.y + size.y * (j + 0.5) / density};
      if (!ctx.model.Contains(p)) continue;
      ++acc.count;
      try {
        const Vec2 x[1] = {p};
        acc.sum += PhiGamma(ctx, f, x);
      } catch (...) {
        if (!IsDegenerate(std::current_exception())) throw;
      }
    }
    return acc;
  });
  Acc total;
  for (const Acc& a : rows) {
    total.sum += a.sum;
    total.count += a.count;
  }
  return total.count ? total.sum / total.count : 0.0;
}

double PointPushPsiOracle(const GgContext& ctx, const AnnulusTwist& twist) {
  if (ctx.basepoint.n != 1) throw InputError("the point-push oracle is for one point");
  if (ctx.qm.symmetrized()) throw InputError("the point-push oracle needs a homomorphism");
  for (const BrooksPattern& t : ctx.qm.terms()) {
    if (t.pattern.size() != 1) {
      throw InputError("the point-push oracle needs length-one patterns (a homomorphism)");
    }
  }
  std::vector<Letter> letters;
  const std::vector<int> exits = twist.CoreCrossings();
  for (auto it = exits.rbegin(); it != exits.rend(); ++it) {
    letters.push_back(ctx.model.exit_letter(*it));
  }
  const double phi_c = EvaluateQm(ctx.qm, Word(letters));
  return phi_c * twist.ProfileIntegral() / ctx.model.area();
}

PsiBarReport PsiBar(const GgContext& ctx, const Homeo& f, long k_max, long samples,
                    std::uint64_t seed, int workers) {
  if (k_max < 1) throw InputError("k_max must be at least 1");
  PsiBarReport r;
  for (long k = 1; k <= k_max; ++k) {
    const PsiEstimate e = PsiMonteCarlo(ctx, f.Power(k), samples, seed, workers);
    r.psi.push_back(e.mean);
    r.std_error.push_back(e.std_error);
    r.per_k.push_back(e.mean / k);
    r.rejected += e.rejected;
  }
  r.limit = r.per_k.back();
  const auto [lo, hi] = std::minmax_element(r.per_k.begin(), r.per_k.end());
  r.spread = *hi - *lo;
  for (long i = 1; i <= k_max; ++i) {
    for (long j = 1; i + j <= k_max; ++j) {
      r.observed_defect = std::max(
          r.observed_defect, std::abs(r.psi[i - 1] + r.psi[j - 1] - r.psi[i + j - 1]));
    }
  }
  const double d = r.observed_defect;
  const double se_limit = r.std_error.back() / k_max;
  for (long k = 1; k <= k_max; ++k) {
    const double allowance =
        d / k + d / k_max + 3.0 * (r.std_error[k - 1] / k + se_limit);
    if (std::abs(r.per_k[k - 1] - r.limit) > allowance + 1e-12) r.rate_violations.push_back(k);
  }
  return r;
}

double PsiZ(const GgContext& ctx, const Homeo& f) {
  return PhiGamma(ctx, f, ctx.basepoint.z);
}

GrowthReport GrowthEstimate(const GgContext& ctx, const Homeo& f, long k_max) {
  if (k_max < 2) throw InputError("k_max must be at least 2");
  GrowthReport r;
  const long tail = (k_max + 1) / 2;
  for (long k = 1; k <= k_max; ++k) {
    const double ratio = std::abs(PsiZ(ctx, f.Power(k))) / k;
    r.ratios.push_back(ratio);
    if (k >= tail) r.limsup_proxy = std::max(r.limsup_proxy, ratio);
  }
  return r;
}

std::string ToString(Verdict v) {
  return v == Verdict::kUndistorted ? "undistorted" : "inconclusive";
}

DistortionCertificate CertifyUndistorted(const GgContext& ctx, const Homeo& f) {
  DistortionCertificate c;
  c.f = f.Describe();
  c.z = ctx.basepoint.z;
  c.fixed_exactly = true;
  for (const Vec2& z : c.z) c.fixed_exactly = c.fixed_exactly && f.FixesExactly(z);
  try {
    const GammaValue g = Gamma(f, c.z, ctx.basepoint, ctx.model, ctx.resolution);
    c.gamma = FormatGamma(g, ctx.model);
    c.phi = EvaluateQm(ctx.qm, g);
  } catch (const DegenerateError& e) {
    c.reason = std::string("gamma(f, z) is degenerate: ") + e.what();
    return c;
  }
  if (!c.fixed_exactly) {
    c.reason = "z is not an exact fixed point of f";
  } else if (!(c.phi > 0.0)) {
    c.reason = "phi(gamma(f, z)) is not positive";
  } else {
    c.verdict = Verdict::kUndistorted;
    c.reason = "z is fixed and phi(gamma(f, z)) > 0";
  }
  return c;
}

NormEstimate EstimateNorm(const std::function<double(const Homeo&)>& psi, const Homeo& f,
                          std::span<const Homeo> S) {
  NormEstimate est;
  est.set_size = static_cast<long>(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    const double v = std::abs(psi(S[i]) - psi(f * S[i]));
    if (est.witness < 0 || v > est.value) {
      est.value = v;
      est.witness = static_cast<long>(i);
    }
  }
  return est;
}

double GridMaxPhi(const GgContext& ctx, const Homeo& f, int density, int workers,
                  long* points, long* degenerate) {
  const std::vector<Vec2> first = GridPoints(ctx.model, density);
  std::vector<Vec2> second;
  if (ctx.basepoint.n == 2) second = GridPoints(ctx.model, std::max(2, density / 4));
  struct Acc {
    double max = 0.0;
    long points = 0;
    long degenerate = 0;
  };
  const auto parts = ParallelMap<Acc>(first.size(), workers, [&](std::size_t i) {
    Acc acc;
    auto visit = [&](std::span<const Vec2> x) {
      ++acc.points;
      try {
        acc.max = std::max(acc.max, std::abs(PhiGamma(ctx, f, x)));
      } catch (...) {
        if (!IsDegenerate(std::current_exception())) throw;
        ++acc.degenerate;
      }
    };
    if (ctx.basepoint.n == 1) {
      const Vec2 x[1] = {first[i]};
      visit(x);
    } else {
      for (const Vec2& q : second) {
        if (q == first[i]) continue;
        const Vec2 x[2] = {first[i], q};
        visit(x);
      }
    }
    return acc;
  });
  Acc total;
  for (const Acc& a : parts) {
    total.max = std::max(total.max, a.max);
    total.points += a.points;
    total.degenerate += a.degenerate;
  }
  if (points) *points = total.points;
  if (degenerate) *degenerate = total.degenerate;
  return total.max;
}

SemiBoundReport SemiBoundScan(const GgContext& ctx, const Homeo& f,
                              const SemiBoundOptions& options, std::span<const Homeo> gs) {
  SemiBoundReport r;
  r.f = f.Describe();
  r.mode = options.mode;
  r.d_hat_sampled = EstimateDefect(ctx.qm, options.defect_trials, options.defect_max_len,
                                   DeriveSeed(options.seed, 0xdefec7), DefectMode::kHomogeneous,
                                   options.workers)
                        .max_observed;
  r.b_hat_grid = GridMaxPhi(ctx, f, 4 * options.grid, options.workers, &r.grid_points);

  std::vector<Homeo> sampled;
  if (gs.empty()) {
    for (long i = 0; i < options.g_samples; ++i) {
      Rng rng(DeriveSeed(options.seed, static_cast<std::uint64_t>(i) + 1));
      sampled.push_back(RandomHomeo(rng, ctx.model, options.sampler));
    }
    gs = sampled;
  }
  r.g_samples = static_cast<long>(gs.size());

  const double psi_f = options.mode == SemiBoundMode::kPointwise ? PsiZ(ctx, f) : 0.0;
  struct Item {
    double delta = 0.0;
    double b_extra = 0.0;
    double d_extra = 0.0;
    long degenerate = 0;
  };
  const auto& z = ctx.basepoint.z;
  const auto items = ParallelMap<Item>(gs.size(), options.workers, [&](std::size_t i) {
    const Homeo& g = gs[i];
    const Homeo fg = f * g;
    Item item;
    // gamma(fg, x) = gamma(f, g x) gamma(g, x), so |delta| is at most
    // |phi(gamma(f, x))| + |phi(gamma(f, g x))| + the defect of that product.
    auto terms = [&](std::span<const Vec2> x, double phi_f_x, double* delta) {
      std::vector<Vec2> gx;
      for (const Vec2& p : x) gx.push_back(g.Apply(p));
      const GammaValue gg = Gamma(g, x, ctx.basepoint, ctx.model, ctx.resolution);
      const GammaValue a = Gamma(f, gx, ctx.basepoint, ctx.model, ctx.resolution);
      const GammaValue fgg = Gamma(fg, x, ctx.basepoint, ctx.model, ctx.resolution);
      *delta = EvaluateQm(ctx.qm, gg) - EvaluateQm(ctx.qm, fgg) + phi_f_x;
      item.b_extra = std::max({item.b_extra, std::abs(EvaluateQm(ctx.qm, a)), std::abs(phi_f_x)});
      item.d_extra = std::max(item.d_extra, PairDefect(ctx.qm, BaseWord(ctx.qm, a),
                                                       BaseWord(ctx.qm, gg)));
    };
    if (options.mode == SemiBoundMode::kPointwise) {
      try {
        terms(z, psi_f, &item.delta);
      } catch (...) {
        if (!IsDegenerate(std::current_exception())) throw;
        item.degenerate = 1;
      }
      return item;
    }
    Rng rng(DeriveSeed(DeriveSeed(options.seed, 0x1e7e6a1), i));
    double sum = 0.0;
    for (long s = 0; s < options.integral_samples; ++s) {
      for (int attempt = 0;; ++attempt) {
        if (attempt > kMaxRedraws) throw DegenerateError("almost every sample is degenerate");
        const std::vector<Vec2> x = SampleConfiguration(rng, ctx.model, ctx.basepoint.n);
        try {
          const double phi_f_x = PhiGamma(ctx, f, x);
          double d = 0.0;
          terms(x, phi_f_x, &d);
          sum += d;
          break;
        } catch (...) {
          if (!IsDegenerate(std::current_exception())) throw;
          ++item.degenerate;
        }
      }
    }
    item.delta = sum / static_cast<double>(options.integral_samples);
    return item;
  });
  r.b_hat = r.b_hat_grid;
  r.d_hat = r.d_hat_sampled;
  for (const Item& item : items) {
    r.max_delta = std::max(r.max_delta, std::abs(item.delta));
    r.b_hat = std::max(r.b_hat, item.b_extra);
    r.d_hat = std::max(r.d_hat, item.d_extra);
    r.degenerate += item.degenerate;
  }
  r.bound = 2.0 * r.b_hat + r.d_hat;
  return r;
}

std::vector<Word> ShortSegmentWords(const GgContext& ctx, double max_length, int grid,
                                    int directions) {
  if (ctx.basepoint.n != 1) throw InputError("short-segment words are for one point");
  const Vec2 z = ctx.basepoint.z[0];
  std::set<Word> words;
  for (const Vec2& y : GridPoints(ctx.model, grid)) {
    for (int k = 0; k < directions; ++k) {
      const double theta = 2.0 * std::numbers::pi * (k + 0.25) / directions;
      const Vec2 dir{std::cos(theta), std::sin(theta)};
      for (double frac : {0.25, 0.5, 0.75, 0.999}) {
        try {
          const PathTrace seg = Walk(ctx.model, y, (frac * max_length) * dir);
          const Vec2 end = seg.pieces.back().to;
          RequireInCell(ctx.model, end);
          words.insert(TraceToWord(
              Connector(ctx.model, end, z) * seg * Connector(ctx.model, z, y), ctx.model));
        } catch (const DegenerateError&) {
        }
      }
    }
  }
  return {words.begin(), words.end()};
}

SmallnessReport C0SmallnessCheck(const GgContext& ctx, const Homeo& f, double max_profile,
                                 int grid, std::uint64_t seed, int workers) {
  SmallnessReport r;
  r.threshold = SystoleThreshold(ctx.model, ctx.basepoint.n);
  r.max_profile = max_profile;
  const std::vector<Word> family = ShortSegmentWords(ctx, r.threshold, grid, 32);
  r.family_words = static_cast<long>(family.size());
  for (const Word& w : family) r.family_max = std::max(r.family_max, std::abs(EvaluateQm(ctx.qm, w)));
  r.d_hat = EstimateDefect(ctx.qm, 20000, 10, seed, DefectMode::kHomogeneous, workers).max_observed;
  r.grid_max = GridMaxPhi(ctx, f, grid, workers, &r.grid_points, &r.degenerate);
  return r;
}

}  // namespace homeoqm
