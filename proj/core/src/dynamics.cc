#include "homeoqm/dynamics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <numbers>

#include "homeoqm/errors.h"
#include "homeoqm/parallel.h"

namespace homeoqm {
namespace {

constexpr double kPi = std::numbers::pi;

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string Point(const Vec2& p) { return "(" + Num(p.x) + "," + Num(p.y) + ")"; }

bool NearInteger(double v) { return std::abs(v - std::round(v)) <= 1e-12; }

PathTrace Stationary(const Vec2& x, double t_from, double t_to) {
  PathTrace t;
  t.pieces.push_back({x, x, t_from, t_to, -1});
  return t;
}

void Append(PathTrace& out, const PathTrace& more) {
  out.pieces.insert(out.pieces.end(), more.pieces.begin(), more.pieces.end());
}

}  // namespace

// ---------------------------------------------------------------- twist

AnnulusTwist::AnnulusTwist(const PolygonModel& model, std::vector<CoreVertex> core,
                           double radius, std::vector<ProfilePoint> profile)
    : model_(model), core_(std::move(core)), radius_(radius), profile_(std::move(profile)) {
  const int m = static_cast<int>(core_.size());
  if (m == 0) throw InputError("twist core needs at least one vertex");
  if (!(radius_ > 0.0)) throw InputError("twist radius must be positive");
  if (m == 1 && core_[0].via < 0) {
    throw InputError("a one-vertex twist core must cross a side (set \"via\")");
  }
  legs_.resize(m);
  std::vector<Vec2> end_dir(m);
  for (int j = 0; j < m; ++j) {
    const CoreVertex& cv = core_[j];
    if (cv.via >= model_.num_sides()) {
      throw InputError("twist core vertex " + std::to_string(j) + ": side " +
                       std::to_string(cv.via) + " does not exist");
    }
    const Vec2 next = core_[(j + 1) % m].at;
    const Vec2 target =
        cv.via >= 0 ? model_.transport(cv.via).Inverse()(next) : next;
    const Vec2 d = target - cv.at;
    const double len = Norm(d);
    if (len < 1e-9) {
      throw InputError("twist core leg " + std::to_string(j) + " has zero length");
    }
    Leg& leg = legs_[j];
    leg.start = cv.at;
    leg.dir = (1.0 / len) * d;
    leg.normal = LeftNormal(leg.dir);
    leg.length = len;
    leg.via = cv.via;
    end_dir[j] = cv.via >= 0 ? model_.transport(cv.via).Rotate(leg.dir) : leg.dir;
  }
  for (int j = 0; j < m; ++j) {
    const int k = (j + 1) % m;
    const double beta = SignedAngle(end_dir[j], legs_[k].dir);
    if (std::abs(beta) > 2.0 * kPi / 3.0 + 1e-12) {
      throw InputError("twist core turns by more than 120 degrees at vertex " +
                       std::to_string(k));
    }
    legs_[j].tan_out = std::tan(beta / 2.0);
    legs_[k].tan_in = legs_[j].tan_out;
  }
  // Resolve and check the profile.
  if (profile_.size() < 2) throw InputError("twist profile needs at least two breakpoints");
  for (std::size_t i = 0; i + 1 < profile_.size(); ++i) {
    if (!(profile_[i].u < profile_[i + 1].u)) {
      throw InputError("twist profile breakpoints must have increasing u");
    }
  }
  if (std::abs(profile_.front().u + radius_) > 1e-12 ||
      std::abs(profile_.back().u - radius_) > 1e-12) {
    throw InputError("twist profile must start at u = -r and end at u = r");
  }
  profile_.front().u = -radius_;
  profile_.back().u = radius_;
  const double l0 = core_length();
  for (const ProfilePoint& p : profile_) profile_h_.push_back(p.h + p.laps * l0);
  if (profile_h_.front() != 0.0 || profile_h_.back() != 0.0) {
    throw InputError("twist profile must vanish at u = -r and u = r");
  }
  Validate();
}

std::vector<ProfilePoint> AnnulusTwist::Tent(double radius, double peak, double laps) {
  return {{-radius, 0.0, 0.0}, {0.0, peak, laps}, {radius, 0.0, 0.0}};
}

double AnnulusTwist::LoopLength(double u) const {
  double total = 0.0;
  for (const Leg& leg : legs_) total += LegEnd(leg, u) - LegStart(leg, u);
  return total;
}

double AnnulusTwist::Profile(double u) const {
  if (u <= -radius_ || u >= radius_) return 0.0;
  for (std::size_t i = 0; i + 1 < profile_.size(); ++i) {
    const double u0 = profile_[i].u;
    const double u1 = profile_[i + 1].u;
    if (u < u0 || u > u1) continue;
    if (u == u0) return profile_h_[i];
    if (u == u1) return profile_h_[i + 1];
    const double w = (u - u0) / (u1 - u0);
    return (1.0 - w) * profile_h_[i] + w * profile_h_[i + 1];
  }
  return 0.0;
}

double AnnulusTwist::MaxAbsProfile() const {
  double best = 0.0;
  for (double h : profile_h_) best = std::max(best, std::abs(h));
  return best;
}

double AnnulusTwist::ProfileIntegral() const {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < profile_.size(); ++i) {
    total += 0.5 * (profile_h_[i] + profile_h_[i + 1]) *
             (profile_[i + 1].u - profile_[i].u);
  }
  return total;
}

std::vector<int> AnnulusTwist::CoreCrossings() const {
  std::vector<int> out;
  for (const Leg& leg : legs_) {
    if (leg.via >= 0) out.push_back(leg.via);
  }
  return out;
}

void AnnulusTwist::PointOnLeg(int leg_index, double s, double u, Vec2* point,
                              Vec2* dir) const {
  const Leg& leg = legs_[leg_index];
  const Vec2 d = leg.start + s * leg.dir + u * leg.normal;
  if (leg.via >= 0 && model_.SideDistance(d, leg.via) < 0.0) {
    const Isometry& e = model_.transport(leg.via);
    *point = e(d);
    if (dir) *dir = e.Rotate(leg.dir);
  } else {
    *point = d;
    if (dir) *dir = leg.dir;
  }
}

void AnnulusTwist::LegAtSigma(double sigma, double u, int* leg, double* s) const {
  const int m = static_cast<int>(legs_.size());
  for (int j = 0; j < m; ++j) {
    const double len = LegEnd(legs_[j], u) - LegStart(legs_[j], u);
    if (sigma < len || j == m - 1) {
      *leg = j;
      *s = LegStart(legs_[j], u) + std::min(sigma, len);
      return;
    }
    sigma -= len;
  }
}

std::optional<AnnulusTwist::TubeCoordinates> AnnulusTwist::Locate(const Vec2& x) const {
  for (int j = 0; j < static_cast<int>(legs_.size()); ++j) {
    const Leg& leg = legs_[j];
    Vec2 cands[2] = {x, x};
    const int n = leg.via >= 0 ? 2 : 1;
    if (n == 2) cands[1] = model_.transport(leg.via).Inverse()(x);
    for (int c = 0; c < n; ++c) {
      const Vec2 rel = cands[c] - leg.start;
      const double u = Dot(rel, leg.normal);
      if (!(std::abs(u) < radius_)) continue;
      const double s = Dot(rel, leg.dir);
      if (s < LegStart(leg, u) || s >= LegEnd(leg, u)) continue;
      double cum = 0.0;
      for (int i = 0; i < j; ++i) cum += LegEnd(legs_[i], u) - LegStart(legs_[i], u);
      return TubeCoordinates{j, s, u, cum + s - LegStart(leg, u)};
    }
  }
  return std::nullopt;
}

int AnnulusTwist::CountMemberships(const Vec2& x) const {
  int count = 0;
  for (const Leg& leg : legs_) {
    Vec2 cands[2] = {x, x};
    const int n = leg.via >= 0 ? 2 : 1;
    if (n == 2) cands[1] = model_.transport(leg.via).Inverse()(x);
    for (int c = 0; c < n; ++c) {
      const Vec2 rel = cands[c] - leg.start;
      const double u = Dot(rel, leg.normal);
      const double s = Dot(rel, leg.dir);
      if (std::abs(u) < radius_ && s >= LegStart(leg, u) && s < LegEnd(leg, u)) ++count;
    }
  }
  return count;
}

void AnnulusTwist::Validate() const {
  const int m = static_cast<int>(legs_.size());
  const double excl = model_.corner_exclusion_radius();
  for (int j = 0; j < m; ++j) {
    const Leg& leg = legs_[j];
    const double clearance = radius_ * std::sqrt(1.0 + leg.tan_in * leg.tan_in);
    if (model_.DistanceToBoundary(leg.start) <= clearance + 1e-9 ||
        model_.DistanceToNearestCorner(leg.start) <= clearance + excl) {
      throw InputError("twist core vertex " + std::to_string(j) + " at " +
                       Point(leg.start) + " is closer than " + Num(clearance) +
                       " to the polygon boundary; move it inward or shrink the radius");
    }
    for (double u : {-radius_, 0.0, radius_}) {
      const double s0 = LegStart(leg, u);
      const double s1 = LegEnd(leg, u);
      if (!(s1 - s0 > 1e-9)) {
        throw InputError("twist tube folds over itself on leg " + std::to_string(j) +
                         " (turns too sharp for radius " + Num(radius_) + ")");
      }
      const Vec2 a = leg.start + s0 * leg.dir + u * leg.normal;
      PathTrace walked;
      try {
        walked = Walk(model_, a, (s1 - s0) * leg.dir);
      } catch (const DegenerateError&) {
        throw InputError("twist tube on leg " + std::to_string(j) +
                         " passes through a corner-exclusion disk");
      }
      const std::vector<int> exits = walked.Exits();
      const std::vector<int> expected =
          leg.via >= 0 ? std::vector<int>{leg.via} : std::vector<int>{};
      if (exits != expected) {
        throw InputError(
            "twist tube on leg " + std::to_string(j) +
            (leg.via >= 0 ? " must cross side " + std::to_string(leg.via) + " exactly once"
                          : " leaves the polygon; add a \"via\" side or move the vertices"));
      }
    }
  }
  // Embeddedness by sampling the tube in its own coordinates.
  constexpr int kAlong = 48;
  constexpr int kAcross = 9;
  for (int j = 0; j < m; ++j) {
    const Leg& leg = legs_[j];
    for (int k = 0; k < kAcross; ++k) {
      const double u = radius_ * (-1.0 + 2.0 * (k + 0.5) / kAcross);
      const double s0 = LegStart(leg, u);
      const double s1 = LegEnd(leg, u);
      for (int i = 0; i < kAlong; ++i) {
        const double s = s0 + (s1 - s0) * (i + 0.5) / kAlong;
        Vec2 p;
        PointOnLeg(j, s, u, &p, nullptr);
        if (CountMemberships(p) != 1) {
          throw InputError("twist tube is not embedded: it overlaps itself near " +
                           Point(p) + "; reduce the radius or separate the legs");
        }
      }
    }
  }
}

Vec2 AnnulusTwist::Apply(const Vec2& x, long exponent) const {
  if (exponent == 0) return x;
  const auto loc = Locate(x);
  if (!loc) return x;
  const double c = static_cast<double>(exponent) * Profile(loc->u);
  if (c == 0.0) return x;
  const double len = LoopLength(loc->u);
  double sigma = std::fmod(loc->sigma + c, len);
  if (sigma < 0.0) sigma += len;
  if (sigma >= len) sigma = 0.0;
  int leg = 0;
  double s = 0.0;
  LegAtSigma(sigma, loc->u, &leg, &s);
  Vec2 out;
  PointOnLeg(leg, s, loc->u, &out, nullptr);
  return out;
}

PathTrace AnnulusTwist::Trajectory(const Vec2& x, long exponent, int resolution,
                                   double t_from, double t_to) const {
  const auto loc = Locate(x);
  const double c = loc ? static_cast<double>(exponent) * Profile(loc->u) : 0.0;
  if (c == 0.0) return Stationary(x, t_from, t_to);
  const double u = loc->u;
  const double len = LoopLength(u);
  const double lo = std::min(loc->sigma, loc->sigma + c);
  const double hi = std::max(loc->sigma, loc->sigma + c);
  std::vector<double> cuts;
  std::vector<double> leg_starts;
  double cum = 0.0;
  for (const Leg& leg : legs_) {
    leg_starts.push_back(cum);
    cum += LegEnd(leg, u) - LegStart(leg, u);
  }
  for (long k = static_cast<long>(std::floor(lo / len)); k <= static_cast<long>(std::ceil(hi / len)); ++k) {
    for (double start : leg_starts) {
      const double v = k * len + start;
      if (v > lo && v < hi) cuts.push_back(v);
    }
  }
  const int steps = std::max(resolution, 1);
  for (int i = 1; i < steps; ++i) cuts.push_back(loc->sigma + c * i / steps);
  std::sort(cuts.begin(), cuts.end());
  if (c < 0.0) std::reverse(cuts.begin(), cuts.end());
  cuts.insert(cuts.begin(), loc->sigma);
  cuts.push_back(loc->sigma + c);

  PathTrace out;
  auto time_of = [&](double sigma) {
    return t_from + (t_to - t_from) * (sigma - loc->sigma) / c;
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (a == b) continue;
    const double mid = 0.5 * (a + b);
    const double k = std::floor(mid / len);
    int leg = 0;
    double s_mid = 0.0;
    LegAtSigma(mid - k * len, u, &leg, &s_mid);
    const double s_a = LegStart(legs_[leg], u) + (a - k * len - leg_starts[leg]);
    Vec2 p;
    Vec2 dir;
    PointOnLeg(leg, s_a, u, &p, &dir);
    Append(out, Walk(model_, p, (b - a) * dir, time_of(a), time_of(b)));
  }
  return out;
}

bool AnnulusTwist::FixesExactly(const Vec2& x, long exponent) const {
  if (exponent == 0) return true;
  const auto loc = Locate(x);
  if (!loc) return true;
  const double u = std::abs(loc->u) < 1e-12 ? 0.0 : loc->u;
  const double h = Profile(u);
  if (h == 0.0) return true;
  return NearInteger(static_cast<double>(exponent) * (h / LoopLength(u)));
}

std::string AnnulusTwist::Describe() const {
  std::string out = "twist(core=[";
  for (std::size_t i = 0; i < core_.size(); ++i) {
    if (i) out += ",";
    out += Point(core_[i].at);
    if (core_[i].via >= 0) out += "@" + std::to_string(core_[i].via);
  }
  out += "],r=" + Num(radius_) + ",profile=[";
  for (std::size_t i = 0; i < profile_.size(); ++i) {
    if (i) out += ",";
    out += "(" + Num(profile_[i].u) + "," + Num(profile_h_[i]) + ")";
  }
  return out + "])";
}

// ---------------------------------------------------------------- disk

DiskMap::DiskMap(const PolygonModel& model, Vec2 center, double radius, double angle)
    : model_(model), center_(center), radius_(radius), angle_(angle) {
  if (!(radius_ > 0.0)) throw InputError("disk radius must be positive");
  if (!std::isfinite(angle_)) throw InputError("disk angle must be finite");
  if (model_.DistanceToBoundary(center_) <= radius_ + 1e-9 ||
      model_.DistanceToNearestCorner(center_) <= radius_ + model_.corner_exclusion_radius()) {
    throw InputError("disk at " + Point(center_) + " with radius " + Num(radius_) +
                     " is not contained in the open polygon");
  }
}

double DiskMap::AngleAt(const Vec2& x, long exponent) const {
  const double rho = Norm(x - center_);
  if (rho >= radius_) return 0.0;
  return static_cast<double>(exponent) * angle_ * (1.0 - rho / radius_);
}

bool DiskMap::InSupport(const Vec2& x) const { return Norm(x - center_) < radius_; }

Vec2 DiskMap::Apply(const Vec2& x, long exponent) const {
  const double theta = AngleAt(x, exponent);
  if (theta == 0.0) return x;
  return center_ + Rotate(x - center_, theta);
}

PathTrace DiskMap::Trajectory(const Vec2& x, long exponent, int resolution,
                              double t_from, double t_to) const {
  const double theta = AngleAt(x, exponent);
  if (theta == 0.0 || x == center_) return Stationary(x, t_from, t_to);
  const int steps = std::max(
      std::max(resolution, 1), static_cast<int>(std::ceil(std::abs(theta) / (kPi / 32))));
  PathTrace out;
  const Vec2 r = x - center_;
  Vec2 prev = x;
  for (int i = 1; i <= steps; ++i) {
    const Vec2 next = center_ + Rotate(r, theta * i / steps);
    Append(out, Walk(model_, prev, next - prev, t_from + (t_to - t_from) * (i - 1) / steps,
                     t_from + (t_to - t_from) * i / steps));
    prev = next;
  }
  return out;
}

bool DiskMap::FixesExactly(const Vec2& x, long exponent) const {
  if (x == center_) return true;
  return NearInteger(AngleAt(x, exponent) / (2.0 * kPi));
}

std::string DiskMap::Describe() const {
  return "disk(center=" + Point(center_) + ",r=" + Num(radius_) + ",angle=" + Num(angle_) + ")";
}

// ---------------------------------------------------------------- translation

Translation::Translation(const PolygonModel& model, Vec2 v) : model_(model), v_(v) {
  if (!model_.is_torus()) throw InputError("translations are only defined on the torus");
  if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
    throw InputError("translation vector must be finite");
  }
}

Vec2 Translation::Apply(const Vec2& x, long exponent) const {
  double sx = static_cast<double>(exponent) * v_.x;
  double sy = static_cast<double>(exponent) * v_.y;
  sx -= std::round(sx);
  sy -= std::round(sy);
  const Vec2 p{x.x + sx, x.y + sy};
  return {p.x - std::floor(p.x), p.y - std::floor(p.y)};
}

PathTrace Translation::Trajectory(const Vec2& x, long exponent, int resolution,
                                  double t_from, double t_to) const {
  if (exponent == 0 || (v_.x == 0.0 && v_.y == 0.0)) return Stationary(x, t_from, t_to);
  const int steps = std::max(resolution, 1);
  const Vec2 step = (static_cast<double>(exponent) / steps) * v_;
  PathTrace out;
  Vec2 cur = x;
  for (int i = 0; i < steps; ++i) {
    PathTrace part = Walk(model_, cur, step, t_from + (t_to - t_from) * i / steps,
                          t_from + (t_to - t_from) * (i + 1) / steps);
    cur = part.pieces.back().to;
    Append(out, part);
  }
  return out;
}

bool Translation::FixesExactly(const Vec2&, long exponent) const {
  return NearInteger(static_cast<double>(exponent) * v_.x) &&
         NearInteger(static_cast<double>(exponent) * v_.y);
}

std::string Translation::Describe() const { return "translate" + Point(v_); }

// ---------------------------------------------------------------- Homeo

PathTrace IsotopyTrace::Flatten() const {
  PathTrace out;
  for (const PathTrace& f : factors) Append(out, f);
  return out;
}

Homeo::Homeo(std::shared_ptr<const ElementaryMap> map, long exponent) {
  if (!map) throw InputError("null elementary map");
  if (exponent != 0) factors_.push_back({std::move(map), exponent});
}

Vec2 Homeo::Apply(const Vec2& x) const {
  if (factors_.empty()) return x;
  const PolygonModel& model = factors_.front().map->model();
  if (model.DistanceToNearestCorner(x) <= model.corner_exclusion_radius()) {
    throw DegenerateError("point lies in a corner-exclusion disk");
  }
  Vec2 p = x;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    p = it->map->Apply(p, it->exponent);
  }
  return p;
}

IsotopyTrace Homeo::Trajectory(const Vec2& x, int resolution) const {
  if (resolution < 2) throw InputError("trajectory resolution must be at least 2");
  IsotopyTrace out;
  if (factors_.empty()) {
    out.factors.push_back(Stationary(x, 0.0, 1.0));
    return out;
  }
  Vec2 p = x;
  double slot = 0.0;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it, slot += 1.0) {
    out.factors.push_back(it->map->Trajectory(p, it->exponent, resolution, slot, slot + 1.0));
    p = it->map->Apply(p, it->exponent);
    // The next factor restarts from the closed-form image; near a side the
    // walked end and the image may sit on different sides of it.
    if (std::next(it) != factors_.rend() && it->map->model().DistanceToBoundary(p) <= 1e-9) {
      throw DegenerateError("intermediate image lies on the polygon boundary");
    }
  }
  return out;
}

bool Homeo::FixesExactly(const Vec2& x) const {
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    if (!it->map->FixesExactly(x, it->exponent)) return false;
  }
  return true;
}

Homeo Homeo::Inverse() const {
  Homeo out;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    out.factors_.push_back({it->map, -it->exponent});
  }
  return out;
}

Homeo Homeo::Power(long k) const {
  if (k == 0 || factors_.empty()) return Homeo();
  if (factors_.size() == 1) {
    Homeo out;
    out.factors_.push_back({factors_[0].map, factors_[0].exponent * k});
    return out;
  }
  const Homeo base = k > 0 ? *this : Inverse();
  Homeo out;
  for (long i = 0; i < std::abs(k); ++i) {
    out.factors_.insert(out.factors_.end(), base.factors_.begin(), base.factors_.end());
  }
  return out;
}

Homeo Compose(const Homeo& f, const Homeo& g) {
  Homeo out = f;
  out.factors_.insert(out.factors_.end(), g.factors_.begin(), g.factors_.end());
  return out;
}

std::string Homeo::Describe() const {
  if (factors_.empty()) return "id";
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += " * ";
    out += factors_[i].map->Describe();
    if (factors_[i].exponent != 1) out += "^" + std::to_string(factors_[i].exponent);
  }
  return out;
}

// ---------------------------------------------------------------- probes

std::vector<Vec2> GridPoints(const PolygonModel& model, int density) {
  if (density < 1) throw InputError("grid density must be positive");
  constexpr double kJitter = 0x1.0p-13;
  const Vec2 lo = model.box_min();
  const Vec2 size = model.box_max() - lo;
  std::vector<Vec2> out;
  for (int i = 0; i < density; ++i) {
    for (int j = 0; j < density; ++j) {
      // the offset does not scale with density, so grids nest under doubling
      const Vec2 p{lo.x + size.x * (static_cast<double>(i) / density + kJitter),
                   lo.y + size.y * (static_cast<double>(j) / density + kJitter)};
      if (model.Contains(p, 1e-9) &&
          model.DistanceToNearestCorner(p) > model.corner_exclusion_radius()) {
        out.push_back(p);
      }
    }
  }
  return out;
}

double D0Distance(const Homeo& f, const Homeo& g, const PolygonModel& model, int density) {
  double best = 0.0;
  for (const Vec2& p : GridPoints(model, density)) {
    best = std::max(best, SurfaceDistance(model, f.Apply(p), g.Apply(p)));
  }
  return best;
}

MeasureCheckReport MeasureCheck(const Homeo& f, const PolygonModel& model, int disks,
                                long samples_per_disk, std::uint64_t seed, int workers) {
  MeasureCheckReport report;
  report.disks = disks;
  report.samples_per_disk = samples_per_disk;
  if (f.is_identity()) return report;  // f(B) = B
  const Homeo inv = f.Inverse();
  const double excl = model.corner_exclusion_radius();
  // Sampling avoids the corner disks; their total area is excl^2 times half
  // the angle sum of the polygon.
  const double angle_sum = (model.num_sides() - 2) * kPi;
  const double area = model.area() - 0.5 * excl * excl * angle_sum;
  constexpr long kChunk = 4096;
  for (int d = 0; d < disks; ++d) {
    const std::uint64_t disk_seed = DeriveSeed(seed, static_cast<std::uint64_t>(d));
    Rng rng(disk_seed);
    const double r = 0.1 * model.circumradius() * rng.Uniform(0.5, 1.0);
    const Vec2 center = SampleUniform(rng, model, r + excl);
    const double exact = kPi * r * r / area;
    const long chunks = (samples_per_disk + kChunk - 1) / kChunk;
    const auto hits = ParallelMap<long>(static_cast<std::size_t>(chunks), workers, [&](std::size_t c) {
      Rng local(DeriveSeed(disk_seed, c + 1));
      const long n = std::min(kChunk, samples_per_disk - static_cast<long>(c) * kChunk);
      long in = 0;
      for (long i = 0; i < n; ++i) {
        const Vec2 y = SampleUniform(local, model);
        if (Norm(inv.Apply(y) - center) < r) ++in;
      }
      return in;
    });
    long total = 0;
    for (long h : hits) total += h;
    const double estimate = static_cast<double>(total) / samples_per_disk;
    const double se = std::sqrt(exact * (1.0 - exact) / samples_per_disk);
    const double z = std::abs(estimate - exact) / se;
    report.max_abs_z = std::max(report.max_abs_z, z);
    report.max_abs_error = std::max(report.max_abs_error, std::abs(estimate - exact));
    if (z > 3.0) report.pass = false;
  }
  return report;
}

RecurrenceReport RecurrenceProbe(const Homeo& f, const PolygonModel& model, long k_max,
                                 int density) {
  if (k_max < 1) throw InputError("k_max must be at least 1");
  RecurrenceReport report;
  const Homeo id;
  for (long k = 1; k <= k_max; ++k) {
    const double d = D0Distance(f.Power(k), id, model, density);
    report.distances.push_back(d);
    if (k == 1 || d < report.best_distance) {
      report.best_k = k;
      report.best_distance = d;
    }
  }
  return report;
}

}  // namespace homeoqm
