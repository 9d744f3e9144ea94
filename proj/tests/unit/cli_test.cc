#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "homeoqm/errors.h"
#include "homeoqm_cli/cli.h"
#include "homeoqm_cli/scene.h"
#include "json.hpp"

namespace homeoqm::cli {
namespace {

const std::string kScenes = HOMEOQM_SCENES_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "homeoqm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string WriteTemp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

TEST(Scene, LoadsBundledScenes) {
  for (const auto& e : std::filesystem::directory_iterator(kScenes)) {
    if (e.path().extension() != ".json") continue;
    EXPECT_NO_THROW(LoadSceneFile(e.path().string())) << e.path();
  }
}

TEST(Scene, ErrorsNameTheField) {
  const nlohmann::json bad = nlohmann::json::parse(R"({
    "schema_version": 1, "surface": "torus", "basepoint": [[0.5, 0.5]],
    "maps": {"f": {"disk": {"center": [0.5, 0.5], "radius": "big", "angle": 1}}}})");
  try {
    LoadScene(bad);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("maps.f"), std::string::npos) << e.what();
  }
  EXPECT_THROW(LoadScene(nlohmann::json::parse(R"({"schema_version": 2, "surface": "torus",
                  "basepoint": [[0.5, 0.5]]})")),
               InputError);
  EXPECT_THROW(LoadScene(nlohmann::json::parse(R"({"schema_version": 1, "surface": "torus",
                  "basepoint": [[0.5, 0.5]], "maps": {"f": "g"}})")),
               InputError);
}

TEST(Scene, ExpressionsCompose) {
  const Scene s = LoadSceneFile(kScenes + "/torus_pair.json");
  EXPECT_EQ(s.Map("fg").factors().size(), 3u);
  EXPECT_TRUE(s.Map("identity").is_identity());
  EXPECT_THROW(s.Map("missing"), InputError);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(Invoke({"gamma", kScenes + "/genus2_push_a1.json"}).code, kExitPass);
  EXPECT_EQ(Invoke({"gamma", "/nonexistent.json"}).code, kExitConfigError);
  EXPECT_EQ(Invoke({"bogus"}).code, kExitConfigError);
  EXPECT_EQ(Invoke({"--workers", "0", "psi", kScenes + "/torus_pair.json"}).code,
            kExitConfigError);
  const std::string broken = WriteTemp("homeoqm_broken.json", "{ not json");
  EXPECT_EQ(Invoke({"psi", broken}).code, kExitConfigError);
}

TEST(Cli, GammaOutputIsJsonLine) {
  const CliRun r = Invoke({"gamma", kScenes + "/genus2_push_a1.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["gamma"], "a1");
  EXPECT_EQ(j["command"], "gamma");
}

TEST(Cli, CertifyReportsVerdict) {
  const CliRun r = Invoke({"certify", kScenes + "/genus2_push_a1.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "undistorted");
  EXPECT_EQ(j["phi"], 1.0);
}

TEST(Cli, FlagsOverrideEnvironmentOverrideScene) {
  const std::string scene = kScenes + "/torus_pair.json";
  setenv("HOMEOQM_SAMPLES", "300", 1);
  auto j = nlohmann::json::parse(Invoke({"psi", scene}).out);
  EXPECT_EQ(j["samples"], 300);
  j = nlohmann::json::parse(Invoke({"--samples", "200", "psi", scene}).out);
  EXPECT_EQ(j["samples"], 200);
  unsetenv("HOMEOQM_SAMPLES");
  j = nlohmann::json::parse(Invoke({"psi", scene, "--samples", "150", "--seed", "4"}).out);
  EXPECT_EQ(j["samples"], 150);
  EXPECT_EQ(j["seed"], 4);
}

TEST(Cli, OutFileMatchesStdout) {
  const std::string out = (std::filesystem::temp_directory_path() / "homeoqm_out.jsonl").string();
  const CliRun r = Invoke({"eval-qm", kScenes + "/torus_pair.json", "--samples", "500", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), r.out);
}

TEST(Cli, PsiBarWritesCsv) {
  const std::string csv = (std::filesystem::temp_directory_path() / "homeoqm_psibar.csv").string();
  const CliRun r = Invoke({"psi-bar", kScenes + "/genus2_push_a1.json", "--k-max", "4", "--samples",
                        "1000", "--csv", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(csv);
  std::string line;
  int lines = 0;
  while (std::getline(f, line)) ++lines;
  EXPECT_EQ(lines, 5);
}

TEST(Cli, PsiOfIdentityIsZero) {
  const std::string scene = WriteTemp("homeoqm_identity.json", R"js({
    "schema_version": 1, "surface": "genus(2)", "basepoint": [[0.1, 0.2]],
    "quasimorphism": {"terms": [{"pattern": "x1x2", "coefficient": 1}]},
    "experiment": {"map": "identity", "samples": 500}})js");
  const CliRun r = Invoke({"psi", scene});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["mean"], 0.0);
}

TEST(Cli, InvalidGeometryIsConfigError) {
  const std::string scene = WriteTemp("homeoqm_badtube.json", R"({
    "schema_version": 1, "surface": "torus", "basepoint": [[0.5, 0.5]],
    "maps": {"f": {"twist": {"core": [[0.3, 0.3], [0.7, 0.3], [0.7, 0.7], [0.3, 0.7]],
                             "radius": 0.4, "peak": 0.1}}}})");
  const CliRun r = Invoke({"gamma", scene});
  EXPECT_EQ(r.code, kExitConfigError);
  EXPECT_NE(r.err.find("maps.f"), std::string::npos) << r.err;
}

TEST(Cli, SelftestPasses) {
  const CliRun r = Invoke({"selftest", kScenes + "/torus_pair.json"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

}  // namespace
}  // namespace homeoqm::cli
