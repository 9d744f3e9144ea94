#include "homeoqm_cli/cli.h"

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "homeoqm/errors.h"
#include "homeoqm/gg.h"
#include "homeoqm_cli/scene.h"
#include "json.hpp"

namespace homeoqm::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Flags {
  std::string command;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<long> samples;
  std::optional<int> workers;
  std::optional<std::string> out;
  std::optional<long> k_max;
  std::optional<int> grid;
  std::optional<std::string> csv;
};

// Flag (or environment variable), then experiment section, then default.
class Settings {
 public:
  Settings(const Flags& flags, const Scene& scene) : flags_(flags), exp_(scene.experiment) {}

  std::uint64_t seed() const { return Pick(flags_.seed, "seed", std::uint64_t{1}); }
  long samples(long fallback = 10000) const { return Pick(flags_.samples, "samples", fallback); }
  int workers() const { return Pick(flags_.workers, "workers", 1); }
  long k_max(long fallback = 16) const { return Pick(flags_.k_max, "k_max", fallback); }
  int grid(int fallback = 8) const { return Pick(flags_.grid, "grid", fallback); }

  template <typename T>
  T Exp(const char* key, T fallback) const {
    if (!exp_.contains(key)) return fallback;
    try {
      return exp_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw InputError(std::string("experiment.") + key + ": wrong type");
    }
  }
  bool Has(const char* key) const { return exp_.contains(key); }
  const nlohmann::json& Raw(const char* key) const { return exp_.at(key); }

 private:
  template <typename T>
  T Pick(const std::optional<T>& flag, const char* key, T fallback) const {
    if (flag) return *flag;
    return Exp<T>(key, fallback);
  }

  const Flags& flags_;
  const nlohmann::json& exp_;
};

Json PointJson(const Vec2& p) { return Json::array({p.x, p.y}); }

Json PointsJson(std::span<const Vec2> ps) {
  Json a = Json::array();
  for (const Vec2& p : ps) a.push_back(PointJson(p));
  return a;
}

std::vector<Vec2> PointsFrom(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected a list of points");
  std::vector<Vec2> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw InputError(path + ": expected points [x, y]");
    }
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

SamplerOptions SamplerFrom(const Settings& s) {
  SamplerOptions o;
  if (!s.Has("sampler")) return o;
  const auto& j = s.Raw("sampler");
  if (!j.is_object()) throw InputError("experiment.sampler: expected an object");
  o.max_factors = j.value("max_factors", o.max_factors);
  o.max_exponent = j.value("max_exponent", o.max_exponent);
  o.max_twist_peak = j.value("max_twist_peak", o.max_twist_peak);
  o.allow_disks = j.value("disks", o.allow_disks);
  o.allow_translations = j.value("translations", o.allow_translations);
  return o;
}

Json Header(const std::string& command, const Scene& scene) {
  Json r;
  r["command"] = command;
  r["surface"] = scene.ctx.model.name();
  r["n"] = scene.ctx.basepoint.n;
  return r;
}

std::vector<Homeo> NamedList(const Scene& scene, const Settings& s, const char* key) {
  std::vector<Homeo> out;
  if (!s.Has(key)) return out;
  for (const auto& name : s.Exp<std::vector<std::string>>(key, {})) out.push_back(scene.Map(name));
  return out;
}

std::vector<Homeo> SampledMaps(const Scene& scene, const Settings& s, long count,
                               std::uint64_t salt) {
  std::vector<Homeo> out;
  const SamplerOptions opts = SamplerFrom(s);
  for (long i = 0; i < count; ++i) {
    Rng rng(DeriveSeed(DeriveSeed(s.seed(), salt), static_cast<std::uint64_t>(i)));
    out.push_back(RandomHomeo(rng, scene.ctx.model, opts));
  }
  return out;
}

using Records = std::vector<Json>;

// ------------------------------------------------------------ commands

int CmdGamma(const Scene& scene, const Settings& s, Records& out) {
  const Homeo& f = scene.Map(s.Exp<std::string>("map", "f"));
  const auto& ctx = scene.ctx;
  const std::vector<Vec2> x = s.Has("x") ? PointsFrom(s.Raw("x"), "experiment.x") : ctx.basepoint.z;
  std::vector<Vec2> fx;
  for (const Vec2& p : x) fx.push_back(f.Apply(p));
  GammaValue g;
  try {
    g = Gamma(f, x, ctx.basepoint, ctx.model, ctx.resolution);
  } catch (const DegenerateError& e) {
    throw InputError(std::string("gamma is degenerate at the chosen x: ") + e.what());
  }
  Json r = Header("gamma", scene);
  r["f"] = f.Describe();
  r["x"] = PointsJson(x);
  r["fx"] = PointsJson(fx);
  r["gamma"] = FormatGamma(g, ctx.model);
  r["trivial"] = GammaIsTrivial(g, ctx.model);
  if (ctx.model.is_torus() && ctx.basepoint.n == 1) {
    const auto lat = LatticeClass(std::get<Word>(g));
    r["lattice"] = Json::array({lat[0], lat[1]});
  }
  out.push_back(r);
  return kExitPass;
}

int CmdEvalQm(const Scene& scene, const Settings& s, Records& out) {
  const auto& ctx = scene.ctx;
  const QuasimorphismSpec& qm = ctx.qm;
  for (const auto& text : s.Exp<std::vector<std::string>>("words", {})) {
    Json r = Header("eval-qm", scene);
    r["word"] = text;
    if (ctx.basepoint.n == 2) {
      const TorusBraid b = text.find('|') != std::string::npos
                               ? ParseTorusBraid(text)
                               : TorusBraid{{0, 0}, Parse(text, Presentation::Free(2))};
      r["base"] = Format(b.rel, qm.base());
      r["homogeneous"] = EvaluateQm(qm, b);
      r["raw"] = qm.terms().empty() ? 0.0 : qm.RawOnBase(b.rel);
    } else {
      const Word w = Parse(text, ctx.model.word_presentation());
      r["base"] = Format(qm.ToBase(w), qm.base());
      r["homogeneous"] = EvaluateQm(qm, w);
      r["raw"] = qm.terms().empty() ? 0.0 : qm.Raw(w);
    }
    out.push_back(r);
  }
  const long trials = s.samples(20000);
  const int max_len = s.Exp<int>("defect_max_len", 10);
  Json r = Header("eval-qm", scene);
  r["defect_trials"] = trials;
  r["defect_max_len"] = max_len;
  r["seed"] = s.seed();
  r["defect_homogeneous"] =
      EstimateDefect(qm, trials, max_len, s.seed(), DefectMode::kHomogeneous, s.workers()).max_observed;
  r["defect_raw"] =
      EstimateDefect(qm, trials, max_len, s.seed(), DefectMode::kRaw, s.workers()).max_observed;
  out.push_back(r);
  return kExitPass;
}

Json PsiJson(const PsiEstimate& e) {
  Json r;
  r["mean"] = e.mean;
  r["std_error"] = e.std_error;
  r["samples"] = e.samples;
  r["rejected"] = e.rejected;
  r["seed"] = e.seed;
  r["stratified"] = e.stratified;
  r["rejection_warning"] = e.rejection_warning;
  return r;
}

int CmdPsi(const Scene& scene, const Settings& s, Records& out) {
  const Homeo& f = scene.Map(s.Exp<std::string>("map", "f"));
  const PsiEstimate e = PsiMonteCarlo(scene.ctx, f, s.samples(), s.seed(), s.workers(),
                                      s.Exp<bool>("stratified", false));
  Json r = Header("psi", scene);
  r["f"] = f.Describe();
  r.update(PsiJson(e));
  out.push_back(r);
  return kExitPass;
}

int CmdPsiBar(const Scene& scene, const Settings& s, Records& out,
              const std::optional<std::string>& csv) {
  const Homeo& f = scene.Map(s.Exp<std::string>("map", "f"));
  const long k_max = s.k_max();
  const PsiBarReport rep = PsiBar(scene.ctx, f, k_max, s.samples(), s.seed(), s.workers());
  Json r = Header("psi-bar", scene);
  r["f"] = f.Describe();
  r["k_max"] = k_max;
  r["samples"] = s.samples();
  r["seed"] = s.seed();
  r["psi"] = rep.psi;
  r["std_error"] = rep.std_error;
  r["psi_over_k"] = rep.per_k;
  r["limit"] = rep.limit;
  r["spread"] = rep.spread;
  r["observed_defect"] = rep.observed_defect;
  r["rate_violations"] = rep.rate_violations;
  r["rejected"] = rep.rejected;
  r["pass"] = rep.rate_violations.empty();
  out.push_back(r);
  if (csv) {
    std::ofstream f_csv(*csv);
    if (!f_csv) throw InputError("cannot write " + *csv);
    f_csv << "k,psi,psi_over_k,std_error\n";
    for (long k = 1; k <= k_max; ++k) {
      f_csv << k << ',' << Json(rep.psi[k - 1]).dump() << ',' << Json(rep.per_k[k - 1]).dump()
            << ',' << Json(rep.std_error[k - 1]).dump() << '\n';
    }
  }
  return rep.rate_violations.empty() ? kExitPass : kExitViolation;
}

int CmdPsiZ(const Scene& scene, const Settings& s, Records& out) {
  const Homeo& f = scene.Map(s.Exp<std::string>("map", "f"));
  const auto& ctx = scene.ctx;
  const long k_max = s.k_max(20);
  double value = 0.0;
  GrowthReport growth;
  std::vector<double> powers;
  try {
    value = PsiZ(ctx, f);
    for (long k = 1; k <= k_max; ++k) powers.push_back(PsiZ(ctx, f.Power(k)));
    growth = GrowthEstimate(ctx, f, std::max<long>(2, k_max));
  } catch (const DegenerateError& e) {
    throw InputError(std::string("Psi_z is degenerate at the basepoint: ") + e.what());
  }
  bool fixed = true;
  for (const Vec2& z : ctx.basepoint.z) fixed = fixed && f.FixesExactly(z);
  bool linear = true;
  for (long k = 1; k <= k_max; ++k) linear = linear && powers[k - 1] == k * value;
  Json r = Header("psi-z", scene);
  r["f"] = f.Describe();
  r["z"] = PointsJson(ctx.basepoint.z);
  r["gamma"] = FormatGamma(Gamma(f, ctx.basepoint.z, ctx.basepoint, ctx.model, ctx.resolution),
                           ctx.model);
  r["psi_z"] = value;
  r["psi_z_powers"] = powers;
  r["growth_ratios"] = growth.ratios;
  r["limsup_proxy"] = growth.limsup_proxy;
  r["z_fixed"] = fixed;
  r["linear_in_k"] = linear;
  const bool pass = !fixed || linear;
  r["pass"] = pass;
  out.push_back(r);
  return pass ? kExitPass : kExitViolation;
}

int CmdCheckCocycle(const Scene& scene, const Settings& s, Records& out) {
  const auto& ctx = scene.ctx;
  bool pass = true;
  if (s.Has("g")) {
    const Homeo& f = scene.Map(s.Exp<std::string>("map", "f"));
    const Homeo& g = scene.Map(s.Exp<std::string>("g", "g"));
    const std::vector<Vec2> x = s.Has("x") ? PointsFrom(s.Raw("x"), "experiment.x") : ctx.basepoint.z;
    Json r = Header("check-cocycle", scene);
    r["f"] = f.Describe();
    r["g"] = g.Describe();
    r["x"] = PointsJson(x);
    try {
      const CocycleCheckResult c = CocycleCheck(f, g, x, ctx.basepoint, ctx.model);
      r["lhs"] = FormatGamma(c.lhs, ctx.model);
      r["rhs"] = FormatGamma(c.rhs, ctx.model);
      r["equal"] = c.equal;
      pass = pass && c.equal;
    } catch (const DegenerateError& e) {
      r["degenerate"] = e.what();
    }
    out.push_back(r);
  }
  const long trials = s.Exp<long>("trials", s.samples(1000));
  const CocycleBatchReport rep =
      CocycleBatch(ctx.model, ctx.basepoint, trials, s.seed(), SamplerFrom(s), s.workers());
  Json r = Header("check-cocycle", scene);
  r["seed"] = s.seed();
  r["trials"] = rep.trials;
  r["checked"] = rep.checked;
  r["equal"] = rep.equal;
  r["degenerate"] = rep.degenerate;
  r["degenerate_rate"] = rep.degenerate_rate();
  r["failures"] = rep.failures;
  r["pass"] = rep.pass();
  out.push_back(r);
  pass = pass && rep.pass();
  return pass ? kExitPass : kExitViolation;
}

int CmdCheckSemibound(const Scene& scene, const Settings& s, Records& out) {
  const Homeo& f = scene.Map(s.Exp<std::string>("map", "f"));
  SemiBoundOptions o;
  const std::string mode = s.Exp<std::string>("mode", "pointwise");
  if (mode == "pointwise") {
    o.mode = SemiBoundMode::kPointwise;
  } else if (mode == "integral") {
    o.mode = SemiBoundMode::kIntegral;
  } else {
    throw InputError("experiment.mode: expected \"pointwise\" or \"integral\"");
  }
  o.g_samples = s.Exp<long>("g_samples", 1000);
  o.grid = s.grid();
  o.integral_samples = s.Exp<long>("integral_samples", 64);
  o.defect_trials = s.Exp<long>("defect_trials", 20000);
  o.defect_max_len = s.Exp<int>("defect_max_len", 10);
  o.seed = s.seed();
  o.workers = s.workers();
  o.sampler = SamplerFrom(s);
  const std::vector<Homeo> gs = NamedList(scene, s, "g_maps");
  SemiBoundReport rep;
  try {
    rep = SemiBoundScan(scene.ctx, f, o, gs);
  } catch (const DegenerateError& e) {
    throw InputError(std::string("f is degenerate at the basepoint: ") + e.what());
  }
  Json r = Header("check-semibound", scene);
  r["f"] = rep.f;
  r["mode"] = mode;
  r["seed"] = o.seed;
  r["g_samples"] = rep.g_samples;
  r["max_delta"] = rep.max_delta;
  r["bound"] = rep.bound;
  r["B_hat"] = rep.b_hat;
  r["B_hat_grid"] = rep.b_hat_grid;
  r["grid_density"] = 4 * o.grid;
  r["grid_points"] = rep.grid_points;
  r["D_hat"] = rep.d_hat;
  r["D_hat_sampled"] = rep.d_hat_sampled;
  r["degenerate"] = rep.degenerate;
  r["pass_grid_only"] = rep.pass_grid_only();
  r["pass"] = rep.pass();
  out.push_back(r);
  return rep.pass() ? kExitPass : kExitViolation;
}

int CmdNormEst(const Scene& scene, const Settings& s, Records& out) {
  const Homeo& f = scene.Map(s.Exp<std::string>("map", "f"));
  std::vector<Homeo> S = NamedList(scene, s, "norm_set");
  const bool named = !S.empty();
  if (!named) S = SampledMaps(scene, s, s.Exp<long>("g_samples", 100), 0x5e7);
  const std::string functional = s.Exp<std::string>("functional", "psi_z");
  std::function<double(const Homeo&)> psi;
  if (functional == "psi_z") {
    psi = [&](const Homeo& h) { return PsiZ(scene.ctx, h); };
  } else if (functional == "psi") {
    const long samples = s.samples(2000);
    psi = [&, samples](const Homeo& h) {
      return PsiMonteCarlo(scene.ctx, h, samples, s.seed(), s.workers()).mean;
    };
  } else {
    throw InputError("experiment.functional: expected \"psi_z\" or \"psi\"");
  }
  NormEstimate est;
  try {
    est = EstimateNorm(psi, f, S);
  } catch (const DegenerateError& e) {
    throw InputError(std::string("a map in the sample set is degenerate at z: ") + e.what());
  }
  Json r = Header("norm-est", scene);
  r["f"] = f.Describe();
  r["functional"] = functional;
  r["set"] = named ? "named" : "sampled";
  r["set_size"] = est.set_size;
  r["value"] = est.value;
  r["witness"] = est.witness >= 0 ? Json(S[est.witness].Describe()) : Json();
  out.push_back(r);
  return kExitPass;
}

int CmdCertify(const Scene& scene, const Settings& s, Records& out) {
  const Homeo& f = scene.Map(s.Exp<std::string>("map", "f"));
  const DistortionCertificate c = CertifyUndistorted(scene.ctx, f);
  Json r = Header("certify", scene);
  r["f"] = c.f;
  r["z"] = PointsJson(c.z);
  r["fixed_exactly"] = c.fixed_exactly;
  r["gamma"] = c.gamma;
  r["phi"] = c.phi;
  r["verdict"] = ToString(c.verdict);
  r["reason"] = c.reason;
  out.push_back(r);
  return kExitPass;
}

int CmdRecurrence(const Scene& scene, const Settings& s, Records& out) {
  const Homeo& f = scene.Map(s.Exp<std::string>("map", "f"));
  const RecurrenceReport rep = RecurrenceProbe(f, scene.ctx.model, s.k_max(), s.grid(32));
  Json r = Header("recurrence", scene);
  r["f"] = f.Describe();
  r["k_max"] = s.k_max();
  r["grid"] = s.grid(32);
  r["best_k"] = rep.best_k;
  r["best_distance"] = rep.best_distance;
  r["distances"] = rep.distances;
  out.push_back(r);
  return kExitPass;
}

int CmdSelftest(const Scene& scene, const Settings& s, Records& out) {
  const auto& ctx = scene.ctx;
  bool all = true;
  auto record = [&](const std::string& check, bool pass, Json detail) {
    Json r = Header("selftest", scene);
    r["check"] = check;
    r["pass"] = pass;
    if (!detail.is_null()) r["detail"] = std::move(detail);
    out.push_back(r);
    all = all && pass;
  };
  const Homeo id;
  record("identity_gamma_trivial",
         GammaIsTrivial(Gamma(id, ctx.basepoint.z, ctx.basepoint, ctx.model), ctx.model), {});

  const CocycleBatchReport coc = CocycleBatch(ctx.model, ctx.basepoint, 200, s.seed(),
                                              SamplerFrom(s), s.workers());
  record("cocycle_identity", coc.pass() && coc.degenerate_rate() < 0.01,
         Json{{"checked", coc.checked}, {"equal", coc.equal}, {"degenerate", coc.degenerate}});

  const PsiEstimate psi_id = PsiMonteCarlo(ctx, id, 1000, s.seed());
  record("psi_identity_zero", psi_id.mean == 0.0 && psi_id.std_error == 0.0, {});

  for (const auto& [name, f] : scene.maps) {
    const MeasureCheckReport m =
        MeasureCheck(f, ctx.model, 3, std::min<long>(s.samples(), 20000), s.seed(), s.workers());
    record("measure_preserving:" + name, m.pass, Json{{"max_abs_z", m.max_abs_z}});

    Rng rng(DeriveSeed(s.seed(), 77));
    double worst = 0.0;
    const Homeo loop = f * f.Inverse();
    for (int i = 0; i < 32; ++i) {
      const Vec2 x = SampleUniform(rng, ctx.model);
      worst = std::max(worst, SurfaceDistance(ctx.model, loop.Apply(x), x));
    }
    record("inverse_roundtrip:" + name, worst < 1e-9, Json{{"max_distance", worst}});

    bool fixed = true;
    for (const Vec2& z : ctx.basepoint.z) fixed = fixed && f.FixesExactly(z);
    if (fixed && !f.is_identity()) {
      bool linear = true;
      try {
        const double v = PsiZ(ctx, f);
        for (long k = 1; k <= 20; ++k) linear = linear && PsiZ(ctx, f.Power(k)) == k * v;
      } catch (const DegenerateError&) {
        linear = false;
      }
      record("fixed_point_linearity:" + name, linear, {});
    }
  }
  if (scene.maps.count("f")) {
    SemiBoundOptions o;
    o.g_samples = 100;
    o.grid = 4;
    o.defect_trials = 5000;
    o.seed = s.seed();
    o.workers = s.workers();
    o.sampler = SamplerFrom(s);
    try {
      const SemiBoundReport sb = SemiBoundScan(ctx, scene.Map("f"), o);
      record("semibound_pointwise", sb.pass(),
             Json{{"max_delta", sb.max_delta}, {"bound", sb.bound}});
    } catch (const DegenerateError& e) {
      record("semibound_pointwise", false, Json{{"error", e.what()}});
    }
  }
  const Homeo& probe = scene.maps.empty() ? id : scene.maps.begin()->second;
  const PsiEstimate a = PsiMonteCarlo(ctx, probe, 2000, s.seed(), 1);
  const PsiEstimate b = PsiMonteCarlo(ctx, probe, 2000, s.seed(), 3);
  record("determinism_across_workers", a.mean == b.mean && a.std_error == b.std_error, {});
  return all ? kExitPass : kExitViolation;
}

int Dispatch(const Flags& flags, Records& out) {
  const Scene scene = LoadSceneFile(flags.config);
  const Settings s(flags, scene);
  if (s.workers() < 1) throw InputError("--workers must be at least 1");
  const std::string& c = flags.command;
  if (c == "gamma") return CmdGamma(scene, s, out);
  if (c == "eval-qm") return CmdEvalQm(scene, s, out);
  if (c == "psi") return CmdPsi(scene, s, out);
  if (c == "psi-bar") return CmdPsiBar(scene, s, out, flags.csv);
  if (c == "psi-z") return CmdPsiZ(scene, s, out);
  if (c == "check-cocycle") return CmdCheckCocycle(scene, s, out);
  if (c == "check-semibound") return CmdCheckSemibound(scene, s, out);
  if (c == "norm-est") return CmdNormEst(scene, s, out);
  if (c == "certify") return CmdCertify(scene, s, out);
  if (c == "recurrence") return CmdRecurrence(scene, s, out);
  if (c == "selftest") return CmdSelftest(scene, s, out);
  throw InputError("unknown subcommand " + c);
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasimorphisms on groups of surface homeomorphisms"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--seed", flags.seed, "random seed")->envname("HOMEOQM_SEED");
  app.add_option("--samples", flags.samples, "Monte Carlo samples or trials")->envname("HOMEOQM_SAMPLES");
  app.add_option("--workers", flags.workers, "worker threads")->envname("HOMEOQM_WORKERS");
  app.add_option("--out", flags.out, "also write the JSON lines to this file")->envname("HOMEOQM_OUT");
  app.add_option("--k-max", flags.k_max, "largest power k")->envname("HOMEOQM_K_MAX");
  app.add_option("--grid", flags.grid, "grid density")->envname("HOMEOQM_GRID");
  app.add_option("--csv", flags.csv, "psi-bar: write the k series as CSV");
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gamma", "braid class gamma(f, x)"},
      {"eval-qm", "evaluate the quasimorphism on words and estimate its defect"},
      {"psi", "Monte Carlo estimate of Psi(f)"},
      {"psi-bar", "Psi(f^k)/k for k = 1..k_max"},
      {"psi-z", "Psi_z(f) at the basepoint and its growth in k"},
      {"check-cocycle", "cocycle identity on random triples"},
      {"check-semibound", "semi-boundedness scan of delta Psi"},
      {"norm-est", "lower bound for the pseudo-norm |f|_psi"},
      {"certify", "undistortedness certificate from a fixed point"},
      {"recurrence", "min over k of d0(f^k, id)"},
      {"selftest", "built-in checks on the scene"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("config", flags.config, "scene file (JSON)")->required();
    sub->callback([&flags, name = name] { flags.command = name; });
  }
  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e_out;
    const int code = app.exit(e, o, e_out);
    out << o.str();
    err << e_out.str();
    return code == 0 ? kExitPass : kExitConfigError;
  }
  Records records;
  int code = kExitPass;
  try {
    code = Dispatch(flags, records);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const DegenerateError& e) {
    err << "error: degenerate input: " << e.what() << '\n';
    return kExitConfigError;
  }
  std::string text;
  for (const Json& r : records) text += r.dump() + '\n';
  out << text;
  if (flags.out) {
    std::ofstream f(*flags.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << *flags.out << '\n';
      return kExitConfigError;
    }
    f << text;
  }
  return code;
}

}  // namespace homeoqm::cli
