#include "homeoqm_cli/scene.h"

#include <fstream>
#include <set>

#include "homeoqm/errors.h"

namespace homeoqm::cli {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

double Number(const json& j, const std::string& path) {
  if (!j.is_number()) Fail(path, "expected a number");
  return j.get<double>();
}

long Integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) Fail(path, "expected an integer");
  return j.get<long>();
}

Vec2 Point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) Fail(path, "expected a point [x, y]");
  return {Number(j[0], path + "[0]"), Number(j[1], path + "[1]")};
}

const json& Field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) Fail(path, std::string("missing \"") + key + "\"");
  return obj.at(key);
}

// A number, or a multiple of the core length written "L", "-L", "2.5L".
ProfilePoint ProfileEntry(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) Fail(path, "expected a breakpoint [u, h]");
  ProfilePoint p;
  p.u = Number(j[0], path + "[0]");
  if (j[1].is_number()) {
    p.h = j[1].get<double>();
  } else if (j[1].is_string()) {
    std::string s = j[1].get<std::string>();
    if (s.empty() || s.back() != 'L') Fail(path, "h must be a number or a multiple of L");
    s.pop_back();
    if (s.empty() || s == "+") {
      p.laps = 1.0;
    } else if (s == "-") {
      p.laps = -1.0;
    } else {
      try {
        std::size_t used = 0;
        p.laps = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
      } catch (const std::exception&) {
        Fail(path, "cannot read \"" + j[1].get<std::string>() + "\" as a multiple of L");
      }
    }
  } else {
    Fail(path, "h must be a number or a multiple of L");
  }
  return p;
}

class MapBuilder {
 public:
  MapBuilder(const PolygonModel& model, const json& defs) : model_(model), defs_(defs) {}

  Homeo Named(const std::string& name, const std::string& path) {
    if (name == "identity" || name == "id") return Homeo();
    if (auto it = done_.find(name); it != done_.end()) return it->second;
    if (!defs_.contains(name)) Fail(path, "unknown map \"" + name + "\"");
    if (active_.count(name)) Fail(path, "map \"" + name + "\" refers to itself");
    active_.insert(name);
    Homeo h = Expr(defs_.at(name), "maps." + name);
    active_.erase(name);
    done_[name] = h;
    return h;
  }

  std::map<std::string, Homeo> All() {
    for (auto it = defs_.begin(); it != defs_.end(); ++it) Named(it.key(), "maps." + it.key());
    return done_;
  }

 private:
  Homeo Expr(const json& j, const std::string& path) {
    if (j.is_string()) return Named(j.get<std::string>(), path);
    if (!j.is_object() || j.size() != 1) {
      Fail(path, "a map is a name or an object with one of twist, disk, translate, "
                 "compose, pow, inverse");
    }
    const std::string kind = j.begin().key();
    const json& body = j.begin().value();
    const std::string sub = path + "." + kind;
    try {
      if (kind == "twist") return Twist(body, sub);
      if (kind == "disk") {
        return Homeo(std::make_shared<const DiskMap>(
            model_, Point(Field(body, "center", sub), sub + ".center"),
            Number(Field(body, "radius", sub), sub + ".radius"),
            Number(Field(body, "angle", sub), sub + ".angle")));
      }
      if (kind == "translate") {
        return Homeo(std::make_shared<const Translation>(model_, Point(body, sub)));
      }
    } catch (const InputError& e) {
      if (std::string(e.what()).rfind(sub, 0) == 0) throw;
      Fail(sub, e.what());
    }
    if (kind == "compose") {
      if (!body.is_array() || body.empty()) Fail(sub, "expected a non-empty list of maps");
      Homeo out;
      for (std::size_t i = 0; i < body.size(); ++i) {
        out = out * Expr(body[i], sub + "[" + std::to_string(i) + "]");
      }
      return out;
    }
    if (kind == "pow") {
      if (!body.is_array() || body.size() != 2) Fail(sub, "expected [map, k]");
      return Expr(body[0], sub + "[0]").Power(Integer(body[1], sub + "[1]"));
    }
    if (kind == "inverse") return Expr(body, sub).Inverse();
    Fail(path, "unknown map kind \"" + kind + "\"");
  }

  Homeo Twist(const json& body, const std::string& path) {
    const json& core_j = Field(body, "core", path);
    if (!core_j.is_array()) Fail(path + ".core", "expected a list of vertices");
    std::vector<CoreVertex> core;
    for (std::size_t i = 0; i < core_j.size(); ++i) {
      const std::string p = path + ".core[" + std::to_string(i) + "]";
      const json& v = core_j[i];
      CoreVertex cv;
      if (v.is_array()) {
        cv.at = Point(v, p);
      } else {
        cv.at = Point(Field(v, "at", p), p + ".at");
        if (v.contains("via")) cv.via = static_cast<int>(Integer(v.at("via"), p + ".via"));
      }
      core.push_back(cv);
    }
    const double radius = Number(Field(body, "radius", path), path + ".radius");
    std::vector<ProfilePoint> profile;
    if (body.contains("profile")) {
      const json& pj = body.at("profile");
      if (!pj.is_array()) Fail(path + ".profile", "expected a list of [u, h]");
      for (std::size_t i = 0; i < pj.size(); ++i) {
        profile.push_back(ProfileEntry(pj[i], path + ".profile[" + std::to_string(i) + "]"));
      }
    } else if (body.contains("peak")) {
      const ProfilePoint peak = ProfileEntry(json::array({0.0, body.at("peak")}), path + ".peak");
      profile = AnnulusTwist::Tent(radius, peak.h, peak.laps);
    } else {
      Fail(path, "twist needs \"profile\" or \"peak\"");
    }
    return Homeo(std::make_shared<const AnnulusTwist>(model_, std::move(core), radius,
                                                      std::move(profile)));
  }

  const PolygonModel& model_;
  const json& defs_;
  std::map<std::string, Homeo> done_;
  std::set<std::string> active_;
};

QuasimorphismSpec LoadQm(const json& j, const PolygonModel& model, int n) {
  const int default_rank = model.is_torus() ? 2 : model.genus();
  const PreMap default_pre = !model.is_torus() ? PreMap::kHandlebodyRetract
                             : n == 2          ? PreMap::kTorusRelative
                                               : PreMap::kIdentity;
  if (j.is_null()) return QuasimorphismSpec::Zero(Presentation::Free(default_rank), default_pre);
  const std::string path = "quasimorphism";
  if (!j.is_object()) Fail(path, "expected an object");
  const int rank = j.contains("base_rank")
                       ? static_cast<int>(Integer(j.at("base_rank"), path + ".base_rank"))
                       : default_rank;
  if (rank < 1) Fail(path + ".base_rank", "must be positive");
  const Presentation base = Presentation::Free(rank);
  std::vector<BrooksPattern> terms;
  if (j.contains("terms")) {
    const json& tj = j.at("terms");
    if (!tj.is_array()) Fail(path + ".terms", "expected a list");
    for (std::size_t i = 0; i < tj.size(); ++i) {
      const std::string p = path + ".terms[" + std::to_string(i) + "]";
      const json& pat = Field(tj[i], "pattern", p);
      if (!pat.is_string()) Fail(p + ".pattern", "expected a word such as \"x1X2\"");
      BrooksPattern bp;
      try {
        bp.pattern = Parse(pat.get<std::string>(), base);
      } catch (const InputError& e) {
        Fail(p + ".pattern", e.what());
      }
      if (tj[i].contains("coefficient")) bp.coefficient = Number(tj[i].at("coefficient"), p + ".coefficient");
      terms.push_back(bp);
    }
  }
  const bool symmetrized = j.value("symmetrized", false);
  PreMap pre = default_pre;
  if (j.contains("pre_map")) {
    if (!j.at("pre_map").is_string()) Fail(path + ".pre_map", "expected a string");
    try {
      pre = ParsePreMap(j.at("pre_map").get<std::string>());
    } catch (const InputError& e) {
      Fail(path + ".pre_map", e.what());
    }
  }
  try {
    return QuasimorphismSpec(base, std::move(terms), symmetrized, pre);
  } catch (const InputError& e) {
    Fail(path, e.what());
  }
}

}  // namespace

const Homeo& Scene::Map(const std::string& name) const {
  static const Homeo kIdentity;
  if (name == "identity" || name == "id") return kIdentity;
  auto it = maps.find(name);
  if (it == maps.end()) throw InputError("unknown map \"" + name + "\"");
  return it->second;
}

Scene LoadScene(const json& doc) {
  if (!doc.is_object()) Fail("scene", "expected a JSON object");
  const long version = Integer(Field(doc, "schema_version", "scene"), "schema_version");
  if (version != kSchemaVersion) {
    Fail("schema_version", "unsupported version " + std::to_string(version) + " (expected " +
                               std::to_string(kSchemaVersion) + ")");
  }
  const json& surface = Field(doc, "surface", "scene");
  if (!surface.is_string()) Fail("surface", "expected \"torus\" or \"genus(g)\"");
  PolygonModel model = PolygonModel::FromName(surface.get<std::string>());

  const json& bj = Field(doc, "basepoint", "scene");
  const json& zj = bj.is_object() ? Field(bj, "z", "basepoint") : bj;
  if (!zj.is_array() || zj.empty()) Fail("basepoint.z", "expected a list of points");
  std::vector<Vec2> z;
  for (std::size_t i = 0; i < zj.size(); ++i) {
    z.push_back(Point(zj[i], "basepoint.z[" + std::to_string(i) + "]"));
  }
  if (bj.is_object() && bj.contains("n") &&
      Integer(bj.at("n"), "basepoint.n") != static_cast<long>(z.size())) {
    Fail("basepoint.n", "does not match the number of points in z");
  }
  Basepoint bp;
  try {
    bp = Basepoint::Make(model, z);
  } catch (const InputError& e) {
    Fail("basepoint", e.what());
  }
  QuasimorphismSpec qm = LoadQm(doc.contains("quasimorphism") ? doc.at("quasimorphism") : json(),
                                model, bp.n);
  const int resolution = doc.contains("resolution")
                             ? static_cast<int>(Integer(doc.at("resolution"), "resolution"))
                             : kDefaultResolution;
  GgContext ctx = [&] {
    try {
      return GgContext::Make(model, bp, qm, resolution);
    } catch (const InputError& e) {
      Fail("quasimorphism", e.what());
    }
  }();

  const json maps_j = doc.contains("maps") ? doc.at("maps") : json::object();
  if (!maps_j.is_object()) Fail("maps", "expected an object of named maps");
  Scene scene{std::move(ctx), {}, doc.contains("experiment") ? doc.at("experiment") : json::object()};
  MapBuilder builder(scene.ctx.model, maps_j);
  scene.maps = builder.All();
  if (!scene.experiment.is_object()) Fail("experiment", "expected an object");
  return scene;
}

Scene LoadSceneFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scene file " + path);
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return LoadScene(doc);
}

}  // namespace homeoqm::cli
