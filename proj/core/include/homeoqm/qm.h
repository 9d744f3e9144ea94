#ifndef HOMEOQM_QM_H_
#define HOMEOQM_QM_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "homeoqm/torus_braid.h"
#include "homeoqm/words.h"

namespace homeoqm {

// One counting term: coefficient * (#pattern - #pattern^-1).
struct BrooksPattern {
  Word pattern;
  double coefficient = 1.0;
};

// How an element of the source group reaches the free base group.
enum class PreMap {
  kIdentity,           // source is the base free group
  kHandlebodyRetract,  // source is pi_1(Sigma_g), base is F_g
  kTorusRelative,      // source is P_2(T) in split form, base is F_2
};

std::string ToString(PreMap m);
PreMap ParsePreMap(const std::string& name);

// A linear combination of Brooks counting quasimorphisms on a free group,
// optionally averaged over the four automorphisms of F_2 that invert
// generators, precomposed with a homomorphism from the source group.
class QuasimorphismSpec {
 public:
  // Throws InputError when a pattern is empty or outside the base rank,
  // when symmetrization is requested on a base other than F_2, or when the
  // pre-map does not fit the base (torus projection needs F_2).
  QuasimorphismSpec(Presentation base, std::vector<BrooksPattern> terms,
                    bool symmetrized = false,
                    PreMap pre_map = PreMap::kIdentity);

  static QuasimorphismSpec Zero(Presentation base,
                                PreMap pre_map = PreMap::kIdentity) {
    return QuasimorphismSpec(base, {}, false, pre_map);
  }

  const Presentation& base() const { return base_; }
  std::span<const BrooksPattern> terms() const { return terms_; }
  bool symmetrized() const { return symmetrized_; }
  PreMap pre_map() const { return pre_map_; }

  // Image of a source-group word in the base free group.
  Word ToBase(const Word& source) const;

  // Homogenized value, computed exactly from cyclic counts.
  double Homogeneous(const Word& source) const;
  double Homogeneous(const TorusBraid& braid) const;
  // The un-homogenized counting function (symmetrized if the spec is).
  double Raw(const Word& source) const;

  // Same, on a word already in the base group.
  double HomogeneousOnBase(const Word& base_word) const;
  double RawOnBase(const Word& base_word) const;

 private:
  double UnsymmetrizedHomogeneous(const Word& base_word) const;
  double UnsymmetrizedRaw(const Word& base_word) const;

  Presentation base_;
  std::vector<BrooksPattern> terms_;
  std::vector<Word> inverse_patterns_;
  bool symmetrized_;
  PreMap pre_map_;
};

// coefficient * (count(g, p) - count(g, p^-1)), linear counts.
double BrooksEval(const BrooksPattern& p, const Word& g,
                  const Presentation& base);
// Exact homogenization of BrooksEval via cyclic counts on the core of g.
double BrooksHomogeneous(const BrooksPattern& p, const Word& g);

// Homogenized value of `spec` on a source-group word.
inline double Homogenize(const QuasimorphismSpec& spec, const Word& g) {
  return spec.Homogeneous(g);
}

// The letter-inverting automorphism of F_2 indexed by mask (bit 0 inverts
// x1, bit 1 inverts x2).
Word InvertGenerators(const Word& w, unsigned mask);

// Average of the homogenized spec over the four letter-inverting
// automorphisms. Throws InputError unless the base is F_2.
double SymmetrizeEval(const QuasimorphismSpec& spec, const Word& g);

enum class DefectMode { kHomogeneous, kRaw };

// Empirical lower bound for the defect sup |phi(h) - phi(gh) + phi(g)|.
struct DefectEstimate {
  double max_observed = 0.0;
  long trials = 0;
  std::uint64_t seed = 0;
};

// |phi(h) - phi(gh) + phi(g)| on base-group words.
double PairDefect(const QuasimorphismSpec& spec, const Word& g, const Word& h,
                  DefectMode mode = DefectMode::kHomogeneous);

// Max of PairDefect over every pair of base words of length <=
// `exhaustive_length`, followed by `trials` pairs of uniform reduced words
// with lengths uniform in [0, max_len]. Pairs are drawn in the base free
// group; every pre-map is a surjective homomorphism onto it, so the defect
// on the source group is the same number. Deterministic in `seed` for any
// worker count.
DefectEstimate EstimateDefect(const QuasimorphismSpec& spec, long trials,
                              int max_len, std::uint64_t seed,
                              DefectMode mode = DefectMode::kHomogeneous,
                              int workers = 1, int exhaustive_length = 2);

struct NormalVanishingReport {
  long checked = 0;
  long violations = 0;
  double max_abs_difference = 0.0;
  bool pass() const { return violations == 0; }
};

// Checks phi(g c) == phi(g) for every g in `elements` and every central c in
// `central` (exact comparison). Throws InputError if some c has a non-trivial
// relative part.
NormalVanishingReport NormalVanishingCheck(const QuasimorphismSpec& spec,
                                           std::span<const TorusBraid> elements,
                                           std::span<const TorusBraid> central);

// All freely reduced words over 1..rank of exactly `length` letters, in
// lexicographic order of letter codes.
std::vector<Word> EnumerateReducedWords(int rank, int length);

}  // namespace homeoqm

#endif  // HOMEOQM_QM_H_
