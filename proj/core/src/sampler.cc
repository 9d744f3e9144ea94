#include "homeoqm/sampler.h"

#include <cmath>
#include <numbers>

#include "homeoqm/errors.h"

namespace homeoqm {
namespace {

constexpr int kMaxAttempts = 10000;

double SideLength(const PolygonModel& model) {
  return Norm(model.vertex(1) - model.vertex(0));
}

}  // namespace

std::vector<CoreVertex> SideCore(const PolygonModel& model, int side, double lambda,
                                 double depth) {
  const int partner = model.paired_side(side);
  const Vec2 on_side = model.vertex(side) + lambda * (model.vertex(side + 1) - model.vertex(side));
  const Vec2 p = on_side - depth * model.outward_normal(side);
  const Vec2 q = model.transport(side)(on_side) - depth * model.outward_normal(partner);
  return {{p, side}, {q, -1}};
}

std::vector<CoreVertex> RandomCore(Rng& rng, const PolygonModel& model, int crossings) {
  const double scale = SideLength(model);
  if (crossings <= 0) {
    std::vector<CoreVertex> tri;
    for (int i = 0; i < 3; ++i) tri.push_back({SampleUniform(rng, model, 0.1 * scale), -1});
    return tri;
  }
  std::vector<CoreVertex> core;
  for (int c = 0; c < crossings; ++c) {
    const int side = static_cast<int>(rng.Below(static_cast<std::uint64_t>(model.num_sides())));
    const auto part = SideCore(model, side, rng.Uniform(0.25, 0.75),
                               scale * rng.Uniform(0.12, 0.35));
    core.insert(core.end(), part.begin(), part.end());
  }
  return core;
}

std::shared_ptr<const AnnulusTwist> RandomTwist(Rng& rng, const PolygonModel& model,
                                                double max_peak) {
  const double scale = SideLength(model);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const double roll = rng.Uniform();
    const int crossings = roll < 0.2 ? 0 : (roll < 0.7 ? 1 : 2);
    auto core = RandomCore(rng, model, crossings);
    const double r = scale * rng.Uniform(0.01, 0.06);
    const double u_peak = r * rng.Uniform(-0.5, 0.5);
    std::vector<ProfilePoint> profile{{-r, 0.0, 0.0}, {u_peak, 0.0, 0.0}, {r, 0.0, 0.0}};
    if (max_peak > 0.0) {
      profile[1].h = max_peak * rng.Uniform(-1.0, 1.0);
    } else {
      profile[1].laps = rng.Uniform(-1.5, 1.5);
    }
    try {
      return std::make_shared<const AnnulusTwist>(model, std::move(core), r, std::move(profile));
    } catch (const InputError&) {
      continue;
    }
  }
  throw DegenerateError("could not draw a valid random twist");
}

std::shared_ptr<const DiskMap> RandomDisk(Rng& rng, const PolygonModel& model) {
  const double scale = SideLength(model);
  const double r = scale * rng.Uniform(0.05, 0.25);
  const Vec2 c = SampleUniform(rng, model, r + model.corner_exclusion_radius() + 1e-6);
  const double angle = rng.Uniform(-3.0, 3.0) * std::numbers::pi;
  return std::make_shared<const DiskMap>(model, c, r, angle);
}

std::shared_ptr<const Translation> RandomTranslation(Rng& rng, const PolygonModel& model) {
  return std::make_shared<const Translation>(
      model, Vec2{rng.Uniform(-0.6, 0.6), rng.Uniform(-0.6, 0.6)});
}

Homeo RandomHomeo(Rng& rng, const PolygonModel& model, const SamplerOptions& options) {
  const long count = rng.Between(1, std::max(1, options.max_factors));
  Homeo out;
  for (long i = 0; i < count; ++i) {
    long e = 0;
    while (e == 0) e = rng.Between(-options.max_exponent, options.max_exponent);
    const double roll = rng.Uniform();
    std::shared_ptr<const ElementaryMap> map;
    if (options.allow_translations && model.is_torus() && roll < 0.2) {
      map = RandomTranslation(rng, model);
    } else if (options.allow_disks && roll < 0.5) {
      map = RandomDisk(rng, model);
    } else {
      map = RandomTwist(rng, model, options.max_twist_peak);
    }
    out = out * Homeo(map, e);
  }
  return out;
}

}  // namespace homeoqm
