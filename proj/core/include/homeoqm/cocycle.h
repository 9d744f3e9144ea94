#ifndef HOMEOQM_COCYCLE_H_
#define HOMEOQM_COCYCLE_H_

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "homeoqm/dynamics.h"
#include "homeoqm/sampler.h"
#include "homeoqm/surface.h"
#include "homeoqm/torus_braid.h"
#include "homeoqm/words.h"

namespace homeoqm {

// Word for n = 1 (a surface-group word for genus >= 2, a crossing word in
// F_2 for the torus), TorusBraid for two points on the torus.
using GammaValue = std::variant<Word, TorusBraid>;

inline constexpr int kDefaultResolution = 8;

// Throws DegenerateError unless p lies in the open cell, at least 1e-9 from
// its boundary and outside the corner-exclusion disks.
void RequireInCell(const PolygonModel& model, const Vec2& p);

// Class of connector(f(x) -> z) * trajectory(f, x) * connector(z -> x).
Word GammaN1(const Homeo& f, const Vec2& x, const Basepoint& bp,
             const PolygonModel& model, int resolution = kDefaultResolution);

// Two strands on the torus in split coordinates: central is the closed-up
// lattice displacement of strand 1, rel the punctured-torus word of the
// relative position p2 - p1 (puncture at the lattice points). Strand
// collisions and puncture incidences raise DegenerateError.
TorusBraid GammaTorusN2(const Homeo& f, std::span<const Vec2> x, const Basepoint& bp,
                        const PolygonModel& model, int resolution = kDefaultResolution);

GammaValue Gamma(const Homeo& f, std::span<const Vec2> x, const Basepoint& bp,
                 const PolygonModel& model, int resolution = kDefaultResolution);

GammaValue GammaProduct(const GammaValue& a, const GammaValue& b);
GammaValue GammaPower(const GammaValue& a, long k);
// Group equality: Dehn's algorithm for genus >= 2, free reduction for the
// torus crossing words, componentwise for braids.
bool GammaEqual(const GammaValue& a, const GammaValue& b, const PolygonModel& model);
bool GammaIsTrivial(const GammaValue& a, const PolygonModel& model);
std::string FormatGamma(const GammaValue& a, const PolygonModel& model);

struct CocycleCheckResult {
  bool equal = false;
  GammaValue lhs;  // gamma(fg, x)
  GammaValue rhs;  // gamma(f, g(x)) * gamma(g, x)
};

// Evaluates both sides of gamma(fg, x) = gamma(f, g(x)) gamma(g, x). The
// left side uses `resolution_lhs`, the right side `resolution_rhs`.
CocycleCheckResult CocycleCheck(const Homeo& f, const Homeo& g, std::span<const Vec2> x,
                                const Basepoint& bp, const PolygonModel& model,
                                int resolution_lhs = kDefaultResolution,
                                int resolution_rhs = kDefaultResolution + 3);

struct CocycleBatchReport {
  long trials = 0;
  long checked = 0;
  long equal = 0;
  long degenerate = 0;
  std::vector<std::string> failures;  // first few mismatches, formatted
  double degenerate_rate() const {
    return trials ? static_cast<double>(degenerate) / trials : 0.0;
  }
  bool pass() const { return checked == equal; }
};

// Random (f, g, x) triples from the map sampler. Degenerate triples are
// counted, not retried. Deterministic in seed for any worker count.
CocycleBatchReport CocycleBatch(const PolygonModel& model, const Basepoint& bp, long trials,
                                std::uint64_t seed, const SamplerOptions& options = {},
                                int workers = 1);

// Uniform configuration of bp.n points in the cell (distinct for n = 2).
std::vector<Vec2> SampleConfiguration(Rng& rng, const PolygonModel& model, int n);

}  // namespace homeoqm

#endif  // HOMEOQM_COCYCLE_H_
