#ifndef HOMEOQM_CLI_SCENE_H_
#define HOMEOQM_CLI_SCENE_H_

#include <map>
#include <string>

#include "homeoqm/gg.h"
#include "json.hpp"

namespace homeoqm::cli {

inline constexpr int kSchemaVersion = 1;

// A validated scene: surface, basepoint, quasimorphism, named maps and the
// raw experiment section.
struct Scene {
  GgContext ctx;
  std::map<std::string, Homeo> maps;
  nlohmann::json experiment = nlohmann::json::object();

  // Named map, or the identity for "identity"/"id". Throws InputError.
  const Homeo& Map(const std::string& name) const;
};

// Throws InputError with the JSON path of the offending entry.
Scene LoadScene(const nlohmann::json& doc);
Scene LoadSceneFile(const std::string& path);

}  // namespace homeoqm::cli

#endif  // HOMEOQM_CLI_SCENE_H_
