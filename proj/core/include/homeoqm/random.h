#ifndef HOMEOQM_RANDOM_H_
#define HOMEOQM_RANDOM_H_

#include <cstdint>

#include "homeoqm/words.h"

namespace homeoqm {

// SplitMix64. The output stream is fully specified by the seed, so sampled
// experiments reproduce bit-for-bit on any platform (the std distributions
// are implementation defined, which rules them out here).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t Below(std::uint64_t n);
  long Between(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(Below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

// Seed of the independent stream for work unit `index` of a run seeded with
// `seed`. Results depend on (seed, index) only, never on which worker ran
// the unit.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index);

// Uniformly random freely reduced word of exactly `length` letters over
// generators 1..rank.
Word RandomReducedWord(Rng& rng, int rank, std::size_t length);

}  // namespace homeoqm

#endif  // HOMEOQM_RANDOM_H_
