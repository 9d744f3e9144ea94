#ifndef HOMEOQM_SAMPLER_H_
#define HOMEOQM_SAMPLER_H_

#include <memory>
#include <vector>

#include "homeoqm/dynamics.h"
#include "homeoqm/random.h"

namespace homeoqm {

// Random valid maps for property tests and scans. Every draw goes through
// the validating constructors; invalid candidates are redrawn.
struct SamplerOptions {
  int max_factors = 3;
  long max_exponent = 2;
  // Largest |h| of random twists; non-positive means up to 1.5 core lengths.
  double max_twist_peak = 0.0;
  bool allow_disks = true;
  bool allow_translations = true;  // torus only
};

// Core through `crossings` side pairings (0 gives a triangle inside the
// polygon). Not validated.
std::vector<CoreVertex> RandomCore(Rng& rng, const PolygonModel& model, int crossings);

// Core crossing `side` once, perpendicular to it at parameter `lambda` along
// the side, with vertices at depth `depth` inside the polygon.
std::vector<CoreVertex> SideCore(const PolygonModel& model, int side, double lambda,
                                 double depth);

std::shared_ptr<const AnnulusTwist> RandomTwist(Rng& rng, const PolygonModel& model,
                                                double max_peak = 0.0);
std::shared_ptr<const DiskMap> RandomDisk(Rng& rng, const PolygonModel& model);
std::shared_ptr<const Translation> RandomTranslation(Rng& rng, const PolygonModel& model);

Homeo RandomHomeo(Rng& rng, const PolygonModel& model, const SamplerOptions& options = {});

}  // namespace homeoqm

#endif  // HOMEOQM_SAMPLER_H_
