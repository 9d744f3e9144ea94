#ifndef HOMEOQM_GG_H_
#define HOMEOQM_GG_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "homeoqm/cocycle.h"
#include "homeoqm/dynamics.h"
#include "homeoqm/qm.h"
#include "homeoqm/sampler.h"
#include "homeoqm/surface.h"

namespace homeoqm {

// Everything needed to turn a homeomorphism into numbers: the surface, the
// base configuration and the quasimorphism on the braid group.
struct GgContext {
  PolygonModel model;
  Basepoint basepoint;
  QuasimorphismSpec qm;
  int resolution = kDefaultResolution;

  // Throws InputError when the quasimorphism does not fit the gamma values
  // of this surface and basepoint. On the torus with n = 1 only the zero
  // quasimorphism is accepted (the fundamental group is abelian).
  static GgContext Make(PolygonModel model, Basepoint basepoint, QuasimorphismSpec qm,
                        int resolution = kDefaultResolution);
};

// Homogeneous value of the quasimorphism on a gamma value.
double EvaluateQm(const QuasimorphismSpec& spec, const GammaValue& value);
// phi(gamma(f, x)).
double PhiGamma(const GgContext& ctx, const Homeo& f, std::span<const Vec2> x);

struct PsiEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long samples = 0;
  long rejected = 0;
  std::uint64_t seed = 0;
  bool stratified = false;
  // Set when more than 1% of the draws were degenerate.
  bool rejection_warning = false;
};

// Monte Carlo estimate of the integral of phi(gamma(f, x)) over the
// normalized area. Degenerate draws are redrawn and counted. Samples are
// processed in fixed chunks with derived seeds, so the result is the same
// for every worker count. With `stratified`, the first point of sample i is
// drawn from cell (i mod m^2) of an m x m grid over the bounding box.
PsiEstimate PsiMonteCarlo(const GgContext& ctx, const Homeo& f, long samples,
                          std::uint64_t seed, int workers = 1, bool stratified = false);

// Midpoint quadrature of the same integral on a density x density grid.
double PsiQuadrature(const GgContext& ctx, const Homeo& f, int density, int workers = 1);

// Closed form of Psi for a point-push twist when phi is a homomorphism on
// the source group (patterns of length one): phi(c) * integral(h) / area,
// with c the class of one lap of the core.
double PointPushPsiOracle(const GgContext& ctx, const AnnulusTwist& twist);

struct PsiBarReport {
  std::vector<double> psi;        // Psi(f^k), k = 1..k_max
  std::vector<double> std_error;  // of Psi(f^k)
  std::vector<double> per_k;      // Psi(f^k) / k
  double limit = 0.0;             // Psi(f^k_max) / k_max
  double spread = 0.0;            // max - min of per_k
  double observed_defect = 0.0;   // max |Psi(f^i) + Psi(f^j) - Psi(f^(i+j))|
  // k with |per_k - limit| above D/k + D/k_max + 3 standard errors.
  std::vector<long> rate_violations;
  long rejected = 0;
};

// Uses the same samples for every power.
PsiBarReport PsiBar(const GgContext& ctx, const Homeo& f, long k_max, long samples,
                    std::uint64_t seed, int workers = 1);

// phi(gamma(f, z)) at the basepoint. Degenerate traces raise.
double PsiZ(const GgContext& ctx, const Homeo& f);

struct GrowthReport {
  std::vector<double> ratios;  // |Psi_z(f^k)| / k
  double limsup_proxy = 0.0;   // max over k >= k_max / 2
};

GrowthReport GrowthEstimate(const GgContext& ctx, const Homeo& f, long k_max);

enum class Verdict { kUndistorted, kInconclusive };
std::string ToString(Verdict v);

struct DistortionCertificate {
  std::string f;
  std::vector<Vec2> z;
  bool fixed_exactly = false;
  std::string gamma;
  double phi = 0.0;
  Verdict verdict = Verdict::kInconclusive;
  std::string reason;
};

DistortionCertificate CertifyUndistorted(const GgContext& ctx, const Homeo& f);

struct NormEstimate {
  double value = 0.0;
  long witness = -1;  // index in S of a maximizer, -1 for empty S
  long set_size = 0;
};

// max over g in S of |psi(g) - psi(f g)|.
NormEstimate EstimateNorm(const std::function<double(const Homeo&)>& psi, const Homeo& f,
                          std::span<const Homeo> S);

enum class SemiBoundMode { kPointwise, kIntegral };

struct SemiBoundOptions {
  SemiBoundMode mode = SemiBoundMode::kPointwise;
  long g_samples = 1000;
  // B_f is scanned on a grid of density 4 * grid (second point: density
  // grid, for two-point configurations).
  int grid = 8;
  long integral_samples = 64;  // common x samples per g (integral mode)
  long defect_trials = 20000;
  int defect_max_len = 10;
  std::uint64_t seed = 1;
  int workers = 1;
  SamplerOptions sampler;
};

struct SemiBoundReport {
  std::string f;
  SemiBoundMode mode = SemiBoundMode::kPointwise;
  double max_delta = 0.0;
  double bound = 0.0;         // 2 * b_hat + d_hat
  double b_hat = 0.0;         // grid max, raised by values met during the scan
  double b_hat_grid = 0.0;    // grid max alone
  double d_hat = 0.0;         // defect estimate, raised by pairs met
  double d_hat_sampled = 0.0; // defect estimate alone
  long g_samples = 0;
  long degenerate = 0;
  long grid_points = 0;
  bool pass() const { return max_delta <= bound + 1e-9 * (1.0 + bound); }
  bool pass_grid_only() const {
    const double b = 2.0 * b_hat_grid + d_hat_sampled;
    return max_delta <= b + 1e-9 * (1.0 + b);
  }
};

// Scans |delta Psi(f, g)| = |Psi(g) - Psi(fg) + Psi(f)| over sampled g (or
// over `gs` when given), with Psi = Psi_z (pointwise) or the common-sample
// integral, against 2 B_f + D_phi.
SemiBoundReport SemiBoundScan(const GgContext& ctx, const Homeo& f,
                              const SemiBoundOptions& options,
                              std::span<const Homeo> gs = {});

// Grid max of |phi(gamma(f, x))| over configurations.
double GridMaxPhi(const GgContext& ctx, const Homeo& f, int density, int workers = 1,
                  long* points = nullptr, long* degenerate = nullptr);

struct SmallnessReport {
  double threshold = 0.0;    // systole threshold for n points
  double max_profile = 0.0;  // max |h| of the map's twists
  double grid_max = 0.0;     // max |phi(gamma(f, x))| on the grid
  double family_max = 0.0;   // max |phi| on the short-segment word family
  double d_hat = 0.0;
  long family_words = 0;
  long grid_points = 0;
  long degenerate = 0;
  bool pass() const { return grid_max <= family_max + d_hat + 1e-9; }
};

// Words of connector(end -> z) * straight segment * connector(z -> start)
// for segments shorter than `max_length` from a grid of start points,
// `directions` directions and four lengths. n = 1 only.
std::vector<Word> ShortSegmentWords(const GgContext& ctx, double max_length, int grid,
                                    int directions);

SmallnessReport C0SmallnessCheck(const GgContext& ctx, const Homeo& f, double max_profile,
                                 int grid, std::uint64_t seed, int workers = 1);

}  // namespace homeoqm

#endif  // HOMEOQM_GG_H_
