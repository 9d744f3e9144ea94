#include "homeoqm/torus_braid.h"

#include <cstdio>

#include "homeoqm/errors.h"

namespace homeoqm {

std::string Format(const TorusBraid& b) {
  return "(" + std::to_string(b.central[0]) + "," +
         std::to_string(b.central[1]) + ")|" +
         Format(b.rel, Presentation::Free(2));
}

TorusBraid ParseTorusBraid(const std::string& text) {
  const auto bar = text.find('|');
  if (bar == std::string::npos) {
    throw InputError("torus braid must look like (m,n)|word");
  }
  long m = 0;
  long n = 0;
  if (std::sscanf(text.substr(0, bar).c_str(), " (%ld ,%ld )", &m, &n) != 2) {
    throw InputError("cannot parse central part of '" + text + "'");
  }
  return {{m, n}, Parse(text.substr(bar + 1), Presentation::Free(2))};
}

}  // namespace homeoqm
