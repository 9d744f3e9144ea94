#include "homeoqm/random.h"

#include <vector>

namespace homeoqm {

std::uint64_t Rng::Below(std::uint64_t n) {
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = Next();
  while (x >= limit) x = Next();
  return x % n;
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index) {
  Rng mix(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  mix.Next();
  return mix.Next();
}

Word RandomReducedWord(Rng& rng, int rank, std::size_t length) {
  std::vector<Letter> letters;
  letters.reserve(length);
  const std::uint64_t alphabet = 2 * static_cast<std::uint64_t>(rank);
  for (std::size_t i = 0; i < length; ++i) {
    Letter l;
    do {
      const auto k = rng.Below(alphabet);
      l = {static_cast<int>(k / 2) + 1, k % 2 == 0 ? 1 : -1};
    } while (!letters.empty() && l == letters.back().Inverse());
    letters.push_back(l);
  }
  return Word(letters);
}

}  // namespace homeoqm
