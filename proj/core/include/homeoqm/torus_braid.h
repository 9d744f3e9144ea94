#ifndef HOMEOQM_TORUS_BRAID_H_
#define HOMEOQM_TORUS_BRAID_H_

#include <array>
#include <string>

#include "homeoqm/words.h"

namespace homeoqm {

// An element of the two-strand pure braid group of the torus in split
// coordinates. The configuration space of two ordered points on T is
// T x (T minus a point) via (p1, p2) -> (p1, p2 - p1), so its fundamental
// group is Z^2 x F_2:
//   central  lattice displacement of strand 1 (simultaneous translations,
//            the centre of the braid group),
//   rel      class of the relative position p2 - p1 in the once-punctured
//            torus, a word in F_2 = <x1, x2>.
// Multiplication is componentwise.
struct TorusBraid {
  std::array<long, 2> central{0, 0};
  Word rel;

  static TorusBraid Central(long m, long n) { return {{m, n}, Word()}; }

  TorusBraid Inverse() const {
    return {{-central[0], -central[1]}, rel.Inverse()};
  }
  TorusBraid Power(long k) const {
    return {{central[0] * k, central[1] * k}, rel.Power(k)};
  }

  friend TorusBraid operator*(const TorusBraid& a, const TorusBraid& b) {
    return {{a.central[0] + b.central[0], a.central[1] + b.central[1]},
            a.rel * b.rel};
  }
  friend bool operator==(const TorusBraid&, const TorusBraid&) = default;
};

// "(m,n)|word" with word in the F_2 serialization.
std::string Format(const TorusBraid& b);
TorusBraid ParseTorusBraid(const std::string& text);

}  // namespace homeoqm

#endif  // HOMEOQM_TORUS_BRAID_H_
