#ifndef HOMEOQM_GEOMETRY_H_
#define HOMEOQM_GEOMETRY_H_

#include <cmath>

namespace homeoqm {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(double s, const Vec2& a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(const Vec2& a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double Dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double Cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double Norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline Vec2 Normalized(const Vec2& a) { return (1.0 / Norm(a)) * a; }
inline Vec2 LeftNormal(const Vec2& a) { return {-a.y, a.x}; }
inline Vec2 Rotate(const Vec2& a, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}
// Signed angle from a to b in (-pi, pi].
inline double SignedAngle(const Vec2& a, const Vec2& b) {
  return std::atan2(Cross(a, b), Dot(a, b));
}

double SegmentPointDistance(const Vec2& a, const Vec2& b, const Vec2& p);
double SegmentSegmentDistance(const Vec2& a, const Vec2& b, const Vec2& c,
                              const Vec2& d);

// Orientation-preserving isometry p -> R p + t with R = [[c, -s], [s, c]].
struct Isometry {
  double c = 1.0;
  double s = 0.0;
  Vec2 t{};

  static Isometry Translation(const Vec2& v) { return {1.0, 0.0, v}; }
  // The isometry taking segment (p0, p1) onto (q0, q1); lengths must agree.
  static Isometry SegmentMap(const Vec2& p0, const Vec2& p1, const Vec2& q0,
                             const Vec2& q1);

  Vec2 Rotate(const Vec2& v) const { return {c * v.x - s * v.y, s * v.x + c * v.y}; }
  Vec2 operator()(const Vec2& p) const { return Rotate(p) + t; }
  Isometry Inverse() const;
  // (*this)(other(p)).
  Isometry Then(const Isometry& other) const;
};

}  // namespace homeoqm

#endif  // HOMEOQM_GEOMETRY_H_
