#ifndef HOMEOQM_WORDS_H_
#define HOMEOQM_WORDS_H_

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace homeoqm {

// A signed generator. Generators are numbered from 1.
struct Letter {
  int generator = 1;
  int sign = 1;

  Letter Inverse() const { return {generator, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// Group presentations the library knows how to compute in.
//
// Free(k):     F_k on x1..xk.
// Surface(g):  pi_1 of the closed genus-g surface, g >= 2, generators
//              a1 b1 .. ag bg (numbered a_i = 2i-1, b_i = 2i), one relator
//              a1 b1 A1 B1 ... ag bg Ag Bg.
class Presentation {
 public:
  enum class Kind { kFree, kSurface };

  static Presentation Free(int rank);
  static Presentation Surface(int genus);

  Kind kind() const { return kind_; }
  int rank() const { return rank_; }
  int genus() const { return kind_ == Kind::kSurface ? rank_ / 2 : 0; }
  bool is_free() const { return kind_ == Kind::kFree; }

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  Presentation(Kind kind, int rank) : kind_(kind), rank_(rank) {}
  Kind kind_;
  int rank_;
};

// A freely reduced word. Every constructor path goes through free reduction,
// so two Words compare equal iff they are the same element of the free group
// on their letters.
class Word {
 public:
  Word() = default;

  // Freely reduces `letters`. Does not validate ranks; use Reduce() for that.
  explicit Word(std::span<const Letter> letters);
  Word(std::initializer_list<Letter> letters)
      : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

  static Word Generator(int generator, int sign = 1) {
    return Word({Letter{generator, sign}});
  }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  int max_generator() const;

  Word Inverse() const;
  Word Power(long k) const;
  // Exponent sum of one generator.
  long ExponentSum(int generator) const;

  friend Word operator*(const Word& lhs, const Word& rhs);
  Word& operator*=(const Word& rhs);
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Validates letters against the presentation rank, then freely reduces.
// Throws InputError for a generator outside 1..rank or a sign other than +-1.
Word Reduce(std::span<const Letter> raw, const Presentation& presentation);

inline Word Concat(const Word& a, const Word& b) { return a * b; }
inline Word Invert(const Word& w) { return w.Inverse(); }
inline Word Power(const Word& w, long k) { return w.Power(k); }

// w == conjugator * core * conjugator^-1 with core cyclically reduced.
struct CyclicDecomposition {
  Word conjugator;
  Word core;
};
CyclicDecomposition CyclicReduce(const Word& w);

// Number of starting positions (overlaps counted) at which `pattern` occurs.
// With `cyclic` set, counts over the positions of the cyclically reduced core
// of w read as a periodic word, so a long pattern may wrap more than once.
// Throws InputError for an empty pattern.
long CountSubword(const Word& w, const Word& pattern, bool cyclic);

// Dehn's algorithm for the genus >= 2 surface relator. The result contains
// no subword longer than half of a cyclic permutation of the relator or its
// inverse, and is empty iff w is trivial in the surface group. Non-empty
// results are not canonical: compare elements with GroupEqual.
Word DehnReduce(const Word& w, const Presentation& presentation);

// Trivial in the group given by `presentation`.
bool IsTrivial(const Word& w, const Presentation& presentation);
bool GroupEqual(const Word& u, const Word& v, const Presentation& presentation);

// The surface relator as a word, for Surface presentations.
Word SurfaceRelator(int genus);

// Homomorphism pi_1(Sigma_g) -> F_g, a_i -> x_i, b_i -> 1.
Word HandlebodyRetract(const Word& w, int genus);

// Serialization. Free groups use x1..xk (X1 for the inverse); surface groups
// use a1, b1, ... (A1, B1 for inverses). The identity is written "e".
// Whitespace and '*' between letters are ignored when parsing.
std::string Format(const Word& w, const Presentation& presentation);
Word Parse(std::string_view text, const Presentation& presentation);

}  // namespace homeoqm

#endif  // HOMEOQM_WORDS_H_
