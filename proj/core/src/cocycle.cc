#include "homeoqm/cocycle.h"

#include <algorithm>
#include <cmath>

#include "homeoqm/errors.h"
#include "homeoqm/parallel.h"

namespace homeoqm {
namespace {

struct TimedLift {
  double t;
  Vec2 p;
};

// Continuous lift to the plane of a torus trajectory, starting at x itself.
std::vector<TimedLift> LiftTorusPath(const IsotopyTrace& trace, const PolygonModel& model) {
  std::vector<TimedLift> out;
  Vec2 offset{};
  for (const PathTrace& factor : trace.factors) {
    for (std::size_t i = 0; i < factor.pieces.size(); ++i) {
      const PathPiece& piece = factor.pieces[i];
      if (i == 0 && !out.empty()) {
        // Factors restart from the closed-form image, which may be the
        // other representative of a point near a side.
        const Vec2 gap = out.back().p - (piece.from + offset);
        offset += Vec2{std::round(gap.x), std::round(gap.y)};
      }
      out.push_back({piece.t_from, piece.from + offset});
      out.push_back({piece.t_to, piece.to + offset});
      if (piece.exit_side >= 0) {
        const auto shift = model.lattice_shift(piece.exit_side);
        offset += Vec2{static_cast<double>(shift[0]), static_cast<double>(shift[1])};
      }
    }
  }
  return out;
}

Vec2 LiftAt(const std::vector<TimedLift>& path, double t) {
  auto it = std::lower_bound(path.begin(), path.end(), t,
                             [](const TimedLift& a, double v) { return a.t < v; });
  if (it == path.end()) return path.back().p;
  if (it == path.begin() || it->t == t) return it->p;
  const TimedLift& b = *it;
  const TimedLift& a = *std::prev(it);
  const double w = (t - a.t) / (b.t - a.t);
  return (1.0 - w) * a.p + w * b.p;
}

std::array<long, 2> ClosingShift(const Vec2& lift_end, const Vec2& image) {
  const Vec2 d = lift_end - image;
  const std::array<long, 2> k{std::lround(d.x), std::lround(d.y)};
  if (std::abs(d.x - k[0]) > 1e-6 || std::abs(d.y - k[1]) > 1e-6) {
    throw DegenerateError("trajectory end does not match the image point");
  }
  return k;
}

}  // namespace

void RequireInCell(const PolygonModel& model, const Vec2& p) {
  if (!(model.DistanceToBoundary(p) > 1e-9) ||
      model.DistanceToNearestCorner(p) <= model.corner_exclusion_radius()) {
    throw DegenerateError("point is not inside the open cell");
  }
}

Word GammaN1(const Homeo& f, const Vec2& x, const Basepoint& bp, const PolygonModel& model,
             int resolution) {
  if (bp.n != 1) throw InputError("GammaN1 needs a one-point basepoint");
  RequireInCell(model, x);
  const Vec2 fx = f.Apply(x);
  RequireInCell(model, fx);
  const Vec2 z = bp.z[0];
  const PathTrace trace = Connector(model, fx, z) * f.Trajectory(x, resolution).Flatten() *
                          Connector(model, z, x);
  return TraceToWord(trace, model);
}

TorusBraid GammaTorusN2(const Homeo& f, std::span<const Vec2> x, const Basepoint& bp,
                        const PolygonModel& model, int resolution) {
  if (!model.is_torus() || bp.n != 2 || x.size() != 2) {
    throw InputError("GammaTorusN2 needs the torus, a two-point basepoint and two points");
  }
  Vec2 fx[2];
  std::vector<TimedLift> lift[2];
  std::array<long, 2> k[2];
  for (int i = 0; i < 2; ++i) {
    RequireInCell(model, x[i]);
    fx[i] = f.Apply(x[i]);
    RequireInCell(model, fx[i]);
    lift[i] = LiftTorusPath(f.Trajectory(x[i], resolution), model);
    k[i] = ClosingShift(lift[i].back().p, fx[i]);
  }
  std::vector<double> times;
  for (const auto& path : lift) {
    for (const TimedLift& tl : path) times.push_back(tl.t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  const Vec2 dz = bp.z[1] - bp.z[0];
  const Vec2 base{std::floor(dz.x), std::floor(dz.y)};
  std::vector<Vec2> rel;
  rel.push_back(dz - base);
  rel.push_back(x[1] - x[0] - base);
  for (double t : times) rel.push_back(LiftAt(lift[1], t) - LiftAt(lift[0], t) - base);
  const Vec2 dk{static_cast<double>(k[1][0] - k[0][0]), static_cast<double>(k[1][1] - k[0][1])};
  rel.push_back(dz - base + dk);
  if (model.DistanceToBoundary(rel.front()) <= 1e-9) {
    throw DegenerateError("basepoint relative position lies on the cell boundary");
  }
  const PathTrace trace = WalkPolyline(model, rel);
  return TorusBraid{k[0], TraceToWord(trace, model)};
}

GammaValue Gamma(const Homeo& f, std::span<const Vec2> x, const Basepoint& bp,
                 const PolygonModel& model, int resolution) {
  if (static_cast<int>(x.size()) != bp.n) {
    throw InputError("configuration size does not match the basepoint");
  }
  if (bp.n == 1) return GammaN1(f, x[0], bp, model, resolution);
  return GammaTorusN2(f, x, bp, model, resolution);
}

GammaValue GammaProduct(const GammaValue& a, const GammaValue& b) {
  if (a.index() != b.index()) throw InputError("mixed gamma value types");
  if (const Word* w = std::get_if<Word>(&a)) return *w * std::get<Word>(b);
  return std::get<TorusBraid>(a) * std::get<TorusBraid>(b);
}

GammaValue GammaPower(const GammaValue& a, long k) {
  if (const Word* w = std::get_if<Word>(&a)) return w->Power(k);
  return std::get<TorusBraid>(a).Power(k);
}

bool GammaEqual(const GammaValue& a, const GammaValue& b, const PolygonModel& model) {
  if (a.index() != b.index()) return false;
  if (const Word* w = std::get_if<Word>(&a)) {
    if (model.is_torus()) return *w == std::get<Word>(b);
    return GroupEqual(*w, std::get<Word>(b), model.word_presentation());
  }
  return std::get<TorusBraid>(a) == std::get<TorusBraid>(b);
}

bool GammaIsTrivial(const GammaValue& a, const PolygonModel& model) {
  if (const Word* w = std::get_if<Word>(&a)) {
    return model.is_torus() ? w->empty() : IsTrivial(*w, model.word_presentation());
  }
  const TorusBraid& b = std::get<TorusBraid>(a);
  return b.central[0] == 0 && b.central[1] == 0 && b.rel.empty();
}

std::string FormatGamma(const GammaValue& a, const PolygonModel& model) {
  if (const Word* w = std::get_if<Word>(&a)) return Format(*w, model.word_presentation());
  return Format(std::get<TorusBraid>(a));
}

CocycleCheckResult CocycleCheck(const Homeo& f, const Homeo& g, std::span<const Vec2> x,
                                const Basepoint& bp, const PolygonModel& model,
                                int resolution_lhs, int resolution_rhs) {
  std::vector<Vec2> gx;
  for (const Vec2& p : x) gx.push_back(g.Apply(p));
  CocycleCheckResult r;
  r.lhs = Gamma(f * g, x, bp, model, resolution_lhs);
  r.rhs = GammaProduct(Gamma(f, gx, bp, model, resolution_rhs),
                       Gamma(g, x, bp, model, resolution_rhs));
  r.equal = GammaEqual(r.lhs, r.rhs, model);
  return r;
}

std::vector<Vec2> SampleConfiguration(Rng& rng, const PolygonModel& model, int n) {
  std::vector<Vec2> x;
  while (static_cast<int>(x.size()) < n) {
    const Vec2 p = SampleUniform(rng, model);
    if (!x.empty() && p == x.back()) continue;
    x.push_back(p);
  }
  return x;
}

CocycleBatchReport CocycleBatch(const PolygonModel& model, const Basepoint& bp, long trials,
                                std::uint64_t seed, const SamplerOptions& options,
                                int workers) {
  enum class Outcome { kEqual, kMismatch, kDegenerate };
  struct Item {
    Outcome outcome = Outcome::kEqual;
    std::string detail;
  };
  const auto items = ParallelMap<Item>(static_cast<std::size_t>(trials), workers, [&](std::size_t i) {
    Rng rng(DeriveSeed(seed, i));
    const Homeo f = RandomHomeo(rng, model, options);
    const Homeo g = RandomHomeo(rng, model, options);
    const std::vector<Vec2> x = SampleConfiguration(rng, model, bp.n);
    try {
      const CocycleCheckResult r = CocycleCheck(f, g, x, bp, model);
      if (r.equal) return Item{};
      return Item{Outcome::kMismatch, "trial " + std::to_string(i) + ": " +
                                          FormatGamma(r.lhs, model) + " vs " +
                                          FormatGamma(r.rhs, model)};
    } catch (const DegenerateError&) {
      return Item{Outcome::kDegenerate, {}};
    } catch (const BoundaryError&) {
      return Item{Outcome::kDegenerate, {}};
    }
  });
  CocycleBatchReport report;
  report.trials = trials;
  for (const Item& item : items) {
    if (item.outcome == Outcome::kDegenerate) {
      ++report.degenerate;
      continue;
    }
    ++report.checked;
    if (item.outcome == Outcome::kEqual) {
      ++report.equal;
    } else if (report.failures.size() < 5) {
      report.failures.push_back(item.detail);
    }
  }
  return report;
}

}  // namespace homeoqm
