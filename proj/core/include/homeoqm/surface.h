#ifndef HOMEOQM_SURFACE_H_
#define HOMEOQM_SURFACE_H_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "homeoqm/geometry.h"
#include "homeoqm/random.h"
#include "homeoqm/words.h"

namespace homeoqm {

// Fundamental polygon of a closed orientable surface with its side pairing.
//
// Torus: the unit square. Sides are numbered counter-clockwise starting at
// the bottom; opposite sides are paired by lattice translations. Leaving
// through the right side reads x1, through the top x2 (inverses for left and
// bottom). Crossing words live in F_2 = pi_1 of the torus punctured at the
// corner.
//
// Genus g >= 2: the regular 4g-gon inscribed in the unit circle with side 0
// horizontal at the bottom. Side 4k+j carries the label a, b, A, B for
// j = 0..3 of handle k+1, and sides 4k, 4k+2 and 4k+1, 4k+3 are glued by the
// orientation-preserving isometries that match those labels. Leaving through
// sides 4k, 4k+1, 4k+2, 4k+3 reads A, b, a, B of handle k+1. With that table
// a counter-clockwise loop around the single vertex reads the standard relator,
// so crossing words are elements of Presentation::Surface(g).
//
// Words are read right to left in time: the first crossing is the rightmost
// letter, matching composition of loops g*f = "f, then g".
class PolygonModel {
 public:
  static PolygonModel Torus();
  static PolygonModel Genus(int genus);
  // "torus" or "genus(g)".
  static PolygonModel FromName(const std::string& name);

  int genus() const { return genus_; }
  bool is_torus() const { return genus_ == 1; }
  std::string name() const;
  int num_sides() const { return static_cast<int>(vertices_.size()); }
  std::span<const Vec2> vertices() const { return vertices_; }
  const Vec2& vertex(int i) const;
  int paired_side(int side) const;
  // Takes points just beyond `side` (in the neighbouring copy of the polygon)
  // back into the polygon, near the paired side.
  const Isometry& transport(int side) const { return transport_[Index(side)]; }
  Letter exit_letter(int side) const { return exit_letter_[Index(side)]; }
  // Lattice displacement of the lift when leaving through `side` (torus).
  std::array<long, 2> lattice_shift(int side) const;
  Presentation word_presentation() const;

  double corner_exclusion_radius() const { return corner_exclusion_; }
  void set_corner_exclusion_radius(double r) { corner_exclusion_ = r; }
  double circumradius() const { return circumradius_; }
  double area() const { return area_; }
  Vec2 box_min() const { return box_min_; }
  Vec2 box_max() const { return box_max_; }

  Vec2 outward_normal(int side) const { return normals_[Index(side)]; }
  // Distance from p to the line of `side`, positive on the inside.
  double SideDistance(const Vec2& p, int side) const;
  double DistanceToBoundary(const Vec2& p) const;
  double DistanceToNearestCorner(const Vec2& p) const;
  bool Contains(const Vec2& p, double margin = 0.0) const;
  Vec2 SideMidpoint(int side) const;

  // Shortest distance between a side and its partner, a lower bound for the
  // systole of the flat model (1 for the unit square).
  double SystoleLowerBound() const;

 private:
  PolygonModel() = default;
  std::size_t Index(int side) const;
  void Finish();

  int genus_ = 1;
  std::vector<Vec2> vertices_;
  std::vector<Vec2> normals_;
  std::vector<int> paired_;
  std::vector<Isometry> transport_;
  std::vector<Letter> exit_letter_;
  double corner_exclusion_ = 0.0;
  double circumradius_ = 1.0;
  double area_ = 1.0;
  Vec2 box_min_{};
  Vec2 box_max_{};
};

// A point of the surface in polygon coordinates. For the torus,
// lift_offset is the lattice vector subtracted to bring the raw point into
// the square.
struct SurfacePoint {
  Vec2 coords;
  std::array<long, 2> lift_offset{0, 0};
};

// Fundamental-domain representative. Throws BoundaryError for points within
// `tolerance` of the polygon boundary.
SurfacePoint Canonicalize(const Vec2& raw, const PolygonModel& model,
                          double tolerance = 1e-12);

// One straight piece of a traced path inside the polygon. When exit_side is
// set, `to` lies on that side and the path continues from its transport.
struct PathPiece {
  Vec2 from;
  Vec2 to;
  double t_from = 0.0;
  double t_to = 0.0;
  int exit_side = -1;
};

struct PathTrace {
  std::vector<PathPiece> pieces;

  bool empty() const { return pieces.empty(); }
  std::vector<int> Exits() const;
  double Length() const;
  // Time-ordered concatenation: this path, then `next`.
  PathTrace Then(const PathTrace& next) const;
  PathTrace Reversed(const PolygonModel& model) const;
};

// Right-to-left composition: a * b runs b first, then a.
inline PathTrace operator*(const PathTrace& a, const PathTrace& b) {
  return b.Then(a);
}

// Follows the straight path start + s * displacement, s in [0, 1], across
// side pairings. `start` must be in the closed polygon. Throws DegenerateError
// when a piece comes within the corner-exclusion radius of a vertex.
PathTrace Walk(const PolygonModel& model, const Vec2& start,
               const Vec2& displacement, double t_from = 0.0,
               double t_to = 1.0);

// Walks a polyline given in developed coordinates: points[0] is in the
// polygon and consecutive points are joined by straight segments of the
// developing map. Times are spread uniformly over [t_from, t_to].
PathTrace WalkPolyline(const PolygonModel& model, std::span<const Vec2> points,
                       double t_from = 0.0, double t_to = 1.0);

// Straight segment inside the polygon (the cell is convex, so there are no
// crossings). Empty when x == y. Throws DegenerateError if the segment meets
// a corner-exclusion disk.
PathTrace Connector(const PolygonModel& model, const Vec2& x, const Vec2& y);

// Word of a closed-up trace: exit letters read right to left, freely reduced
// and, for genus >= 2, Dehn-reduced. Throws DegenerateError if a piece meets
// a corner-exclusion disk.
Word TraceToWord(const PathTrace& trace, const PolygonModel& model);

// Torus only: total lattice displacement (the Z^2 class of a closed trace).
std::array<long, 2> LatticeClass(const PathTrace& trace,
                                 const PolygonModel& model);
// Abelianization of a torus crossing word.
std::array<long, 2> LatticeClass(const Word& torus_word);

// Systole lower bound divided by 2n.
double SystoleThreshold(const PolygonModel& model, int n);

// Distance on the surface between two polygon points, taken as the shortest
// straight path that crosses at most one side (torus: the flat distance).
double SurfaceDistance(const PolygonModel& model, const Vec2& p, const Vec2& q);

// Uniform point of the polygon outside the corner-exclusion disks and at
// least `margin` from the boundary.
Vec2 SampleUniform(Rng& rng, const PolygonModel& model, double margin = 0.0);

// Base configuration z = (z_1, .., z_n) in the open cell. n = 2 is allowed on
// the torus only.
struct Basepoint {
  int n = 1;
  std::vector<Vec2> z;

  // Throws InputError on invalid configurations.
  static Basepoint Make(const PolygonModel& model, std::vector<Vec2> z);
};

}  // namespace homeoqm

#endif  // HOMEOQM_SURFACE_H_
