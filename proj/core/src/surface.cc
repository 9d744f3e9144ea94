#include "homeoqm/surface.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <regex>

#include "homeoqm/errors.h"

namespace homeoqm {

double SegmentPointDistance(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 ab = b - a;
  const double len2 = Dot(ab, ab);
  if (len2 == 0.0) return Norm(p - a);
  const double t = std::clamp(Dot(p - a, ab) / len2, 0.0, 1.0);
  return Norm(p - (a + t * ab));
}

double SegmentSegmentDistance(const Vec2& a, const Vec2& b, const Vec2& c,
                              const Vec2& d) {
  const double d1 = Cross(b - a, c - a);
  const double d2 = Cross(b - a, d - a);
  const double d3 = Cross(d - c, a - c);
  const double d4 = Cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return 0.0;
  }
  return std::min({SegmentPointDistance(a, b, c), SegmentPointDistance(a, b, d),
                   SegmentPointDistance(c, d, a), SegmentPointDistance(c, d, b)});
}

Isometry Isometry::SegmentMap(const Vec2& p0, const Vec2& p1, const Vec2& q0,
                              const Vec2& q1) {
  const double angle = SignedAngle(p1 - p0, q1 - q0);
  Isometry m{std::cos(angle), std::sin(angle), {}};
  m.t = q0 - m.Rotate(p0);
  return m;
}

Isometry Isometry::Inverse() const {
  Isometry inv{c, -s, {}};
  inv.t = -inv.Rotate(t);
  return inv;
}

Isometry Isometry::Then(const Isometry& other) const {
  Isometry m{c * other.c - s * other.s, s * other.c + c * other.s, {}};
  m.t = Rotate(other.t) + t;
  return m;
}

PolygonModel PolygonModel::Torus() {
  PolygonModel m;
  m.genus_ = 1;
  m.vertices_ = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  m.paired_ = {2, 3, 0, 1};
  m.transport_ = {Isometry::Translation({0, 1}), Isometry::Translation({-1, 0}),
                  Isometry::Translation({0, -1}), Isometry::Translation({1, 0})};
  m.exit_letter_ = {{2, -1}, {1, 1}, {2, 1}, {1, -1}};
  m.corner_exclusion_ = 1e-6;
  m.circumradius_ = std::sqrt(0.5);
  m.area_ = 1.0;
  m.Finish();
  return m;
}

PolygonModel PolygonModel::Genus(int genus) {
  if (genus < 2) throw InputError("Genus(g) needs g >= 2; use Torus()");
  PolygonModel m;
  m.genus_ = genus;
  const int sides = 4 * genus;
  const double pi = std::numbers::pi;
  const double phi0 = -pi / 2 - pi / sides;
  for (int j = 0; j < sides; ++j) {
    const double phi = phi0 + 2 * pi * j / sides;
    m.vertices_.push_back({std::cos(phi), std::sin(phi)});
  }
  m.paired_.resize(sides);
  m.transport_.resize(sides);
  m.exit_letter_.resize(sides);
  auto v = [&](int i) { return m.vertices_[i % sides]; };
  for (int k = 0; k < genus; ++k) {
    const int s = 4 * k;
    const Isometry ta = Isometry::SegmentMap(v(s), v(s + 1), v(s + 3), v(s + 2));
    const Isometry tb =
        Isometry::SegmentMap(v(s + 1), v(s + 2), v(s + 4), v(s + 3));
    m.paired_[s] = s + 2;
    m.paired_[s + 2] = s;
    m.paired_[s + 1] = s + 3;
    m.paired_[s + 3] = s + 1;
    m.transport_[s] = ta;
    m.transport_[s + 2] = ta.Inverse();
    m.transport_[s + 1] = tb;
    m.transport_[s + 3] = tb.Inverse();
    const int a = 2 * k + 1;
    const int b = 2 * k + 2;
    m.exit_letter_[s] = {a, -1};
    m.exit_letter_[s + 1] = {b, 1};
    m.exit_letter_[s + 2] = {a, 1};
    m.exit_letter_[s + 3] = {b, -1};
  }
  m.circumradius_ = 1.0;
  m.corner_exclusion_ = 1e-3;
  m.area_ = 0.5 * sides * std::sin(2 * pi / sides);
  m.Finish();
  return m;
}

PolygonModel PolygonModel::FromName(const std::string& name) {
  if (name == "torus") return Torus();
  static const std::regex kGenus(R"(\s*genus\s*\(\s*(\d+)\s*\)\s*)");
  std::smatch match;
  if (std::regex_match(name, match, kGenus)) {
    const int g = std::stoi(match[1].str());
    if (g == 1) return Torus();
    if (g >= 2 && g <= 64) return Genus(g);
  }
  throw InputError("surface must be \"torus\" or \"genus(g)\" with 1 <= g <= 64, got \"" +
                   name + "\"");
}

std::string PolygonModel::name() const {
  return is_torus() ? "torus" : "genus(" + std::to_string(genus_) + ")";
}

void PolygonModel::Finish() {
  const int n = num_sides();
  normals_.resize(n);
  box_min_ = box_max_ = vertices_[0];
  for (int i = 0; i < n; ++i) {
    const Vec2 d = vertices_[(i + 1) % n] - vertices_[i];
    normals_[i] = Normalized(Vec2{d.y, -d.x});
    box_min_ = {std::min(box_min_.x, vertices_[i].x), std::min(box_min_.y, vertices_[i].y)};
    box_max_ = {std::max(box_max_.x, vertices_[i].x), std::max(box_max_.y, vertices_[i].y)};
  }
}

std::size_t PolygonModel::Index(int side) const {
  if (side < 0 || side >= num_sides()) {
    throw InputError("side index " + std::to_string(side) + " out of range");
  }
  return static_cast<std::size_t>(side);
}

const Vec2& PolygonModel::vertex(int i) const {
  const int n = num_sides();
  return vertices_[((i % n) + n) % n];
}

int PolygonModel::paired_side(int side) const { return paired_[Index(side)]; }

std::array<long, 2> PolygonModel::lattice_shift(int side) const {
  if (!is_torus()) return {0, 0};
  const Vec2 t = transport(side).t;
  return {-std::lround(t.x), -std::lround(t.y)};
}

Presentation PolygonModel::word_presentation() const {
  return is_torus() ? Presentation::Free(2) : Presentation::Surface(genus_);
}

double PolygonModel::SideDistance(const Vec2& p, int side) const {
  return -Dot(p - vertices_[Index(side)], normals_[Index(side)]);
}

double PolygonModel::DistanceToBoundary(const Vec2& p) const {
  double d = std::numeric_limits<double>::infinity();
  for (int s = 0; s < num_sides(); ++s) d = std::min(d, SideDistance(p, s));
  return d;
}

double PolygonModel::DistanceToNearestCorner(const Vec2& p) const {
  double d = std::numeric_limits<double>::infinity();
  for (const Vec2& v : vertices_) d = std::min(d, Norm(p - v));
  return d;
}

bool PolygonModel::Contains(const Vec2& p, double margin) const {
  return DistanceToBoundary(p) > margin;
}

Vec2 PolygonModel::SideMidpoint(int side) const {
  return 0.5 * (vertex(side) + vertex(side + 1));
}

double PolygonModel::SystoleLowerBound() const {
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < num_sides(); ++s) {
    const int t = paired_side(s);
    best = std::min(best, SegmentSegmentDistance(vertex(s), vertex(s + 1),
                                                 vertex(t), vertex(t + 1)));
  }
  return best;
}

SurfacePoint Canonicalize(const Vec2& raw, const PolygonModel& model,
                          double tolerance) {
  SurfacePoint out;
  if (model.is_torus()) {
    const double fx = std::floor(raw.x);
    const double fy = std::floor(raw.y);
    out.coords = {raw.x - fx, raw.y - fy};
    out.lift_offset = {static_cast<long>(fx), static_cast<long>(fy)};
  } else {
    Vec2 p = raw;
    for (int iter = 0; iter < 256; ++iter) {
      int worst = -1;
      double worst_d = -tolerance;
      for (int s = 0; s < model.num_sides(); ++s) {
        const double d = model.SideDistance(p, s);
        if (d < worst_d) {
          worst_d = d;
          worst = s;
        }
      }
      if (worst < 0) break;
      p = model.transport(worst)(p);
    }
    out.coords = p;
  }
  if (model.DistanceToBoundary(out.coords) <= tolerance) {
    throw BoundaryError("point lies on the polygon boundary");
  }
  return out;
}

std::vector<int> PathTrace::Exits() const {
  std::vector<int> exits;
  for (const PathPiece& p : pieces) {
    if (p.exit_side >= 0) exits.push_back(p.exit_side);
  }
  return exits;
}

double PathTrace::Length() const {
  double total = 0.0;
  for (const PathPiece& p : pieces) total += Norm(p.to - p.from);
  return total;
}

PathTrace PathTrace::Then(const PathTrace& next) const {
  PathTrace out = *this;
  out.pieces.insert(out.pieces.end(), next.pieces.begin(), next.pieces.end());
  return out;
}

PathTrace PathTrace::Reversed(const PolygonModel& model) const {
  // A piece that left through side s is entered, in reverse, from the paired
  // side; the reversed path leaves the previous piece through that side.
  PathTrace out;
  const std::size_t n = pieces.size();
  for (std::size_t i = 0; i < n; ++i) {
    const PathPiece& p = pieces[n - 1 - i];
    PathPiece r{p.to, p.from, -p.t_to, -p.t_from, -1};
    if (i + 1 < n) {
      const int prev_exit = pieces[n - 2 - i].exit_side;
      if (prev_exit >= 0) r.exit_side = model.paired_side(prev_exit);
    }
    out.pieces.push_back(r);
  }
  return out;
}

namespace {

void CheckCorners(const PolygonModel& model, const Vec2& a, const Vec2& b) {
  const double excl = model.corner_exclusion_radius();
  for (const Vec2& v : model.vertices()) {
    if (SegmentPointDistance(a, b, v) < excl) {
      throw DegenerateError("path enters a corner-exclusion disk");
    }
  }
}

constexpr int kMaxCrossings = 1 << 20;

// Walks from `start` by `displacement`, rotating `frame` by every transport
// used so callers can carry further developed-plane directions along.
void WalkInto(const PolygonModel& model, Vec2 cur, Vec2 rem, double t_from,
              double t_to, PathTrace& out, Isometry* frame, Vec2* end) {
  double consumed = 0.0;
  for (int crossings = 0;; ++crossings) {
    if (crossings > kMaxCrossings) throw DegenerateError("walk does not terminate");
    double tau = 1.0;
    int side = -1;
    for (int s = 0; s < model.num_sides(); ++s) {
      const double speed = Dot(rem, model.outward_normal(s));
      if (speed <= 0.0) continue;
      const double cand = std::max(0.0, model.SideDistance(cur, s)) / speed;
      if (cand < tau) {
        tau = cand;
        side = s;
      }
    }
    const double ta = t_from + (t_to - t_from) * consumed;
    const double next_consumed = consumed + (1.0 - consumed) * tau;
    const double tb = t_from + (t_to - t_from) * next_consumed;
    if (side < 0) {
      const Vec2 stop = cur + rem;
      CheckCorners(model, cur, stop);
      out.pieces.push_back({cur, stop, ta, t_to, -1});
      if (end) *end = stop;
      return;
    }
    const Vec2 hit = cur + tau * rem;
    CheckCorners(model, cur, hit);
    out.pieces.push_back({cur, hit, ta, tb, side});
    const Isometry& e = model.transport(side);
    cur = e(hit);
    rem = e.Rotate((1.0 - tau) * rem);
    if (frame) *frame = e.Then(*frame);
    consumed = next_consumed;
  }
}

}  // namespace

PathTrace Walk(const PolygonModel& model, const Vec2& start,
               const Vec2& displacement, double t_from, double t_to) {
  PathTrace out;
  WalkInto(model, start, displacement, t_from, t_to, out, nullptr, nullptr);
  return out;
}

PathTrace WalkPolyline(const PolygonModel& model, std::span<const Vec2> points,
                       double t_from, double t_to) {
  PathTrace out;
  if (points.empty()) return out;
  Isometry frame;  // developed plane -> current polygon copy
  Vec2 cur = points[0];
  const std::size_t legs = points.size() - 1;
  for (std::size_t i = 0; i < legs; ++i) {
    const double ta = t_from + (t_to - t_from) * static_cast<double>(i) / legs;
    const double tb = t_from + (t_to - t_from) * static_cast<double>(i + 1) / legs;
    const Vec2 d = frame.Rotate(points[i + 1] - points[i]);
    WalkInto(model, cur, d, ta, tb, out, &frame, &cur);
  }
  return out;
}

PathTrace Connector(const PolygonModel& model, const Vec2& x, const Vec2& y) {
  PathTrace out;
  if (x == y) return out;
  CheckCorners(model, x, y);
  out.pieces.push_back({x, y, 0.0, 1.0, -1});
  return out;
}

Word TraceToWord(const PathTrace& trace, const PolygonModel& model) {
  std::vector<Letter> letters;
  for (auto it = trace.pieces.rbegin(); it != trace.pieces.rend(); ++it) {
    CheckCorners(model, it->from, it->to);
    if (it->exit_side >= 0) letters.push_back(model.exit_letter(it->exit_side));
  }
  Word w(letters);
  if (!model.is_torus()) w = DehnReduce(w, model.word_presentation());
  return w;
}

std::array<long, 2> LatticeClass(const PathTrace& trace,
                                 const PolygonModel& model) {
  std::array<long, 2> total{0, 0};
  for (int s : trace.Exits()) {
    const auto d = model.lattice_shift(s);
    total[0] += d[0];
    total[1] += d[1];
  }
  return total;
}

std::array<long, 2> LatticeClass(const Word& torus_word) {
  return {torus_word.ExponentSum(1), torus_word.ExponentSum(2)};
}

double SystoleThreshold(const PolygonModel& model, int n) {
  if (n < 1) throw InputError("n must be positive");
  return model.SystoleLowerBound() / (2.0 * n);
}

double SurfaceDistance(const PolygonModel& model, const Vec2& p, const Vec2& q) {
  if (model.is_torus()) {
    double dx = std::abs(p.x - q.x);
    double dy = std::abs(p.y - q.y);
    dx = std::min(dx, 1.0 - dx);
    dy = std::min(dy, 1.0 - dy);
    return std::hypot(dx, dy);
  }
  double best = Norm(p - q);
  for (int s = 0; s < model.num_sides(); ++s) {
    // q seen from the copy of the polygon beyond side s.
    const Vec2 ghost = model.transport(s).Inverse()(q);
    best = std::min(best, Norm(p - ghost));
  }
  return best;
}

Vec2 SampleUniform(Rng& rng, const PolygonModel& model, double margin) {
  const Vec2 lo = model.box_min();
  const Vec2 hi = model.box_max();
  for (;;) {
    const Vec2 p{rng.Uniform(lo.x, hi.x), rng.Uniform(lo.y, hi.y)};
    if (!model.Contains(p, margin)) continue;
    if (model.DistanceToNearestCorner(p) <= model.corner_exclusion_radius()) continue;
    return p;
  }
}

Basepoint Basepoint::Make(const PolygonModel& model, std::vector<Vec2> z) {
  const int n = static_cast<int>(z.size());
  if (n < 1 || n > 2) throw InputError("basepoint must have 1 or 2 points");
  if (n == 2 && !model.is_torus()) {
    throw InputError("two-point basepoints are supported on the torus only");
  }
  for (const Vec2& p : z) {
    if (!model.Contains(p, 1e-9)) {
      throw InputError("basepoint component must lie strictly inside the polygon");
    }
    if (model.DistanceToNearestCorner(p) <= model.corner_exclusion_radius()) {
      throw InputError("basepoint component lies in a corner-exclusion disk");
    }
  }
  if (n == 2) {
    if (z[0] == z[1]) throw InputError("basepoint components must be distinct");
    const Vec2 d = z[1] - z[0];
    const Vec2 frac{d.x - std::floor(d.x), d.y - std::floor(d.y)};
    if (model.DistanceToBoundary(frac) <= 1e-9) {
      throw InputError(
          "basepoint components must differ in both coordinates (the "
          "relative position must lie inside the cell)");
    }
  }
  return Basepoint{n, std::move(z)};
}

}  // namespace homeoqm
