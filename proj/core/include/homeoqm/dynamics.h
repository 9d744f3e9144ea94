#ifndef HOMEOQM_DYNAMICS_H_
#define HOMEOQM_DYNAMICS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homeoqm/random.h"
#include "homeoqm/surface.h"

namespace homeoqm {

// An area-preserving homeomorphism isotopic to the identity, with the
// canonical isotopy obtained by scaling its defining parameter linearly in
// time. Implementations are immutable.
class ElementaryMap {
 public:
  virtual ~ElementaryMap() = default;

  virtual const PolygonModel& model() const = 0;
  // Image of x under the map raised to `exponent`, in polygon coordinates.
  virtual Vec2 Apply(const Vec2& x, long exponent) const = 0;
  // Motion of x under the canonical isotopy of map^exponent, timed on
  // [t_from, t_to]. `resolution` is the minimum number of sub-steps.
  virtual PathTrace Trajectory(const Vec2& x, long exponent, int resolution,
                               double t_from, double t_to) const = 0;
  // Symbolic fixed-point test from the closed form (no floating comparison
  // of images).
  virtual bool FixesExactly(const Vec2& x, long exponent) const = 0;
  virtual bool InSupport(const Vec2& x) const = 0;
  virtual std::string Describe() const = 0;
};

struct CoreVertex {
  Vec2 at;
  // Side crossed by the leg that leaves this vertex, or -1 for a leg inside
  // the polygon.
  int via = -1;
};

// Profile breakpoint. The displacement is h + laps * L, where L is the
// length of the core loop, so h(0) = L (laps = 1) gives a point-push.
struct ProfilePoint {
  double u = 0.0;
  double h = 0.0;
  double laps = 0.0;
};

// Shear (s, u) -> (s + e h(u), u) in the mitred flat tube of half-width r
// around a closed polyline. s runs along the offset loop at distance u
// (to the left of the core), which has length L(u); the shear is taken
// mod L(u), so the map is exactly area preserving.
class AnnulusTwist final : public ElementaryMap {
 public:
  // Throws InputError with a description of the violated constraint when
  // the tube is not embedded, leaves the allowed region, or the profile is
  // malformed.
  AnnulusTwist(const PolygonModel& model, std::vector<CoreVertex> core,
               double radius, std::vector<ProfilePoint> profile);

  // Tent profile with peak displacement `peak` at u = 0, plus `laps` loops.
  static std::vector<ProfilePoint> Tent(double radius, double peak,
                                        double laps = 0.0);

  const PolygonModel& model() const override { return model_; }
  Vec2 Apply(const Vec2& x, long exponent) const override;
  PathTrace Trajectory(const Vec2& x, long exponent, int resolution,
                       double t_from, double t_to) const override;
  bool FixesExactly(const Vec2& x, long exponent) const override;
  bool InSupport(const Vec2& x) const override { return Locate(x).has_value(); }
  std::string Describe() const override;

  std::span<const CoreVertex> core() const { return core_; }
  double radius() const { return radius_; }
  double core_length() const { return LoopLength(0.0); }
  double LoopLength(double u) const;
  double Profile(double u) const;
  double MaxAbsProfile() const;
  // Integral of h over [-r, r].
  double ProfileIntegral() const;
  // Exit sides of one positive lap of the core loop.
  std::vector<int> CoreCrossings() const;

  struct TubeCoordinates {
    int leg = 0;
    double s = 0.0;      // along the leg, in the leg's developed frame
    double u = 0.0;      // signed offset, positive to the left
    double sigma = 0.0;  // arc length along the offset loop, in [0, L(u))
  };
  std::optional<TubeCoordinates> Locate(const Vec2& x) const;

 private:
  struct Leg {
    Vec2 start;
    Vec2 dir;
    Vec2 normal;
    double length = 0.0;
    int via = -1;
    double tan_in = 0.0;   // tan of half the turn at the start vertex
    double tan_out = 0.0;  // same at the end vertex
  };
  double LegStart(const Leg& leg, double u) const { return u * leg.tan_in; }
  double LegEnd(const Leg& leg, double u) const {
    return leg.length - u * leg.tan_out;
  }
  int CountMemberships(const Vec2& x) const;
  // Polygon point and direction for developed leg coordinates.
  void PointOnLeg(int leg, double s, double u, Vec2* point, Vec2* dir) const;
  void LegAtSigma(double sigma, double u, int* leg, double* s) const;
  void Validate() const;

  PolygonModel model_;
  std::vector<CoreVertex> core_;
  double radius_;
  std::vector<ProfilePoint> profile_;
  std::vector<double> profile_h_;  // resolved breakpoint values
  std::vector<Leg> legs_;
};

// Rotation about `center` by angle * (1 - rho / radius) at distance rho,
// identity outside the disk.
class DiskMap final : public ElementaryMap {
 public:
  DiskMap(const PolygonModel& model, Vec2 center, double radius, double angle);

  const PolygonModel& model() const override { return model_; }
  Vec2 Apply(const Vec2& x, long exponent) const override;
  PathTrace Trajectory(const Vec2& x, long exponent, int resolution,
                       double t_from, double t_to) const override;
  bool FixesExactly(const Vec2& x, long exponent) const override;
  bool InSupport(const Vec2& x) const override;
  std::string Describe() const override;

  Vec2 center() const { return center_; }
  double radius() const { return radius_; }
  double angle() const { return angle_; }

 private:
  double AngleAt(const Vec2& x, long exponent) const;

  PolygonModel model_;
  Vec2 center_;
  double radius_;
  double angle_;
};

// Torus only: x -> x + v, isotopic to the identity through x + t v.
class Translation final : public ElementaryMap {
 public:
  Translation(const PolygonModel& model, Vec2 v);

  const PolygonModel& model() const override { return model_; }
  Vec2 Apply(const Vec2& x, long exponent) const override;
  PathTrace Trajectory(const Vec2& x, long exponent, int resolution,
                       double t_from, double t_to) const override;
  bool FixesExactly(const Vec2& x, long exponent) const override;
  bool InSupport(const Vec2&) const override { return true; }
  std::string Describe() const override;

  Vec2 vector() const { return v_; }

 private:
  PolygonModel model_;
  Vec2 v_;
};

struct Factor {
  std::shared_ptr<const ElementaryMap> map;
  long exponent = 1;
};

// Per-factor motion of a point, in application order. Factor i occupies the
// time slot [i, i + 1].
struct IsotopyTrace {
  std::vector<PathTrace> factors;
  PathTrace Flatten() const;
};

// A composition written left to right: factors_[0] is applied last. The
// canonical isotopy of f*g runs the isotopy of g, then that of f from g(x).
class Homeo {
 public:
  Homeo() = default;
  explicit Homeo(std::shared_ptr<const ElementaryMap> map, long exponent = 1);
  static Homeo Identity() { return Homeo(); }

  std::span<const Factor> factors() const { return factors_; }
  bool is_identity() const { return factors_.empty(); }

  // Throws DegenerateError for x inside a corner-exclusion disk.
  Vec2 Apply(const Vec2& x) const;
  IsotopyTrace Trajectory(const Vec2& x, int resolution) const;
  // True when every factor fixes the successive images of x symbolically.
  bool FixesExactly(const Vec2& x) const;

  Homeo Inverse() const;
  Homeo Power(long k) const;
  friend Homeo Compose(const Homeo& f, const Homeo& g);
  friend Homeo operator*(const Homeo& f, const Homeo& g) { return Compose(f, g); }

  std::string Describe() const;

 private:
  std::vector<Factor> factors_;
};

// Grid lower bound for sup_x d(f(x), g(x)). Grid points are
// box_min + (i / density + 2^-13, j / density + 2^-13) * box_size inside the polygon,
// so the grid for 2*density contains the grid for density.
double D0Distance(const Homeo& f, const Homeo& g, const PolygonModel& model,
                  int density);
std::vector<Vec2> GridPoints(const PolygonModel& model, int density);

struct MeasureCheckReport {
  int disks = 0;
  long samples_per_disk = 0;
  double max_abs_z = 0.0;  // largest |estimate - exact| / standard error
  double max_abs_error = 0.0;
  bool pass = true;
};

// For random disks B, estimates mu(f(B)) as the fraction of uniform samples
// y with f^-1(y) in B and compares with the exact mu(B).
MeasureCheckReport MeasureCheck(const Homeo& f, const PolygonModel& model,
                                int disks, long samples_per_disk,
                                std::uint64_t seed, int workers = 1);

struct RecurrenceReport {
  long best_k = 1;
  double best_distance = 0.0;
  std::vector<double> distances;  // d0(f^k, id) for k = 1..k_max
};

RecurrenceReport RecurrenceProbe(const Homeo& f, const PolygonModel& model,
                                 long k_max, int density);

}  // namespace homeoqm

#endif  // HOMEOQM_DYNAMICS_H_
