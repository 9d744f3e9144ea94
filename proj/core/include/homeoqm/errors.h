#ifndef HOMEOQM_ERRORS_H_
#define HOMEOQM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace homeoqm {

// Malformed arguments: out-of-range generators, empty patterns, mismatched
// presentations, invalid geometry in a scene.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A point lies on the boundary of the fundamental polygon within tolerance.
class BoundaryError : public std::runtime_error {
 public:
  explicit BoundaryError(const std::string& what) : std::runtime_error(what) {}
};

// A traced object touched a corner-exclusion disk, a puncture, or a strand
// collision. Samplers catch this and resample.
class DegenerateError : public std::runtime_error {
 public:
  explicit DegenerateError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace homeoqm

#endif  // HOMEOQM_ERRORS_H_
