#include "homeoqm/words.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "homeoqm/errors.h"

namespace homeoqm {
namespace {

// Appends `l` to a reduced stack, cancelling against the top.
inline void PushReduced(std::vector<Letter>& stack, const Letter& l) {
  if (!stack.empty() && stack.back() == l.Inverse()) {
    stack.pop_back();
  } else {
    stack.push_back(l);
  }
}

}  // namespace

Presentation Presentation::Free(int rank) {
  if (rank < 1) throw InputError("free group rank must be >= 1");
  return Presentation(Kind::kFree, rank);
}

Presentation Presentation::Surface(int genus) {
  if (genus < 2) {
    throw InputError(
        "surface presentations need genus >= 2 (the torus is handled by "
        "lattice coordinates)");
  }
  return Presentation(Kind::kSurface, 2 * genus);
}

Word::Word(std::span<const Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) PushReduced(letters_, l);
}

int Word::max_generator() const {
  int m = 0;
  for (const Letter& l : letters_) m = std::max(m, l.generator);
  return m;
}

Word Word::Inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.letters_.push_back(it->Inverse());
  }
  return out;
}

Word Word::Power(long k) const {
  if (k == 0 || empty()) return Word();
  if (k < 0) return Inverse().Power(-k);
  // w^k = u c^k u^-1 keeps the reduction linear in the output size.
  CyclicDecomposition d = CyclicReduce(*this);
  std::vector<Letter> body;
  body.reserve(d.core.size() * static_cast<std::size_t>(k));
  for (long i = 0; i < k; ++i) {
    body.insert(body.end(), d.core.letters_.begin(), d.core.letters_.end());
  }
  Word core_power;
  core_power.letters_ = std::move(body);
  return d.conjugator * core_power * d.conjugator.Inverse();
}

long Word::ExponentSum(int generator) const {
  long s = 0;
  for (const Letter& l : letters_) {
    if (l.generator == generator) s += l.sign;
  }
  return s;
}

Word operator*(const Word& lhs, const Word& rhs) {
  Word out = lhs;
  out *= rhs;
  return out;
}

Word& Word::operator*=(const Word& rhs) {
  letters_.reserve(letters_.size() + rhs.letters_.size());
  for (const Letter& l : rhs.letters_) PushReduced(letters_, l);
  return *this;
}

Word Reduce(std::span<const Letter> raw, const Presentation& presentation) {
  for (const Letter& l : raw) {
    if (l.generator < 1 || l.generator > presentation.rank()) {
      throw InputError("generator index " + std::to_string(l.generator) +
                       " outside 1.." + std::to_string(presentation.rank()));
    }
    if (l.sign != 1 && l.sign != -1) {
      throw InputError("letter sign must be +1 or -1");
    }
  }
  return Word(raw);
}

CyclicDecomposition CyclicReduce(const Word& w) {
  auto letters = w.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == letters[hi - 1].Inverse()) {
    ++lo;
    --hi;
  }
  return {Word(letters.subspan(0, lo)), Word(letters.subspan(lo, hi - lo))};
}

long CountSubword(const Word& w, const Word& pattern, bool cyclic) {
  if (pattern.empty()) throw InputError("count_subword: empty pattern");
  const std::size_t m = pattern.size();
  long count = 0;
  if (!cyclic) {
    const std::size_t n = w.size();
    if (m > n) return 0;
    for (std::size_t i = 0; i + m <= n; ++i) {
      if (std::equal(pattern.letters().begin(), pattern.letters().end(),
                     w.letters().begin() + static_cast<std::ptrdiff_t>(i))) {
        ++count;
      }
    }
    return count;
  }
  const Word core = CyclicReduce(w).core;
  const std::size_t n = core.size();
  if (n == 0) return 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool match = true;
    for (std::size_t j = 0; j < m && match; ++j) {
      match = core[(i + j) % n] == pattern[j];
    }
    if (match) ++count;
  }
  return count;
}

Word SurfaceRelator(int genus) {
  std::vector<Letter> r;
  r.reserve(static_cast<std::size_t>(4 * genus));
  for (int i = 1; i <= genus; ++i) {
    r.push_back({2 * i - 1, 1});
    r.push_back({2 * i, 1});
    r.push_back({2 * i - 1, -1});
    r.push_back({2 * i, -1});
  }
  return Word(r);
}

Word DehnReduce(const Word& w, const Presentation& presentation) {
  if (presentation.kind() != Presentation::Kind::kSurface) {
    throw InputError("dehn_reduce needs a surface presentation");
  }
  const int g = presentation.genus();
  const std::size_t n = static_cast<std::size_t>(4 * g);
  const Word relator = SurfaceRelator(g);
  const Word inverse = relator.Inverse();
  const std::vector<Letter> rels[2] = {
      {relator.letters().begin(), relator.letters().end()},
      {inverse.letters().begin(), inverse.letters().end()}};

  // Every signed letter occurs exactly once in the relator and once in its
  // inverse, so a match starting at a given letter has one alignment per
  // cyclic word.
  auto slot = [](const Letter& l) {
    return static_cast<std::size_t>(2 * (l.generator - 1) + (l.sign > 0 ? 0 : 1));
  };
  std::vector<std::size_t> position[2];
  for (int r = 0; r < 2; ++r) {
    position[r].assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) position[r][slot(rels[r][k])] = k;
  }

  std::vector<Letter> cur(w.letters().begin(), w.letters().end());
  for (const Letter& l : cur) {
    if (l.generator < 1 || l.generator > presentation.rank()) {
      throw InputError("dehn_reduce: generator outside the presentation");
    }
  }

  std::size_t scan_from = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = scan_from; i < cur.size() && !changed; ++i) {
      for (int r = 0; r < 2 && !changed; ++r) {
        const std::size_t start = position[r][slot(cur[i])];
        std::size_t m = 0;
        while (m < n && i + m < cur.size() &&
               cur[i + m] == rels[r][(start + m) % n]) {
          ++m;
        }
        if (2 * m <= n) continue;
        // Replace the long piece by the inverse of the complementary piece.
        std::vector<Letter> next(cur.begin(),
                                 cur.begin() + static_cast<std::ptrdiff_t>(i));
        std::size_t low_water = next.size();
        for (std::size_t k = n; k > m; --k) {
          PushReduced(next, rels[r][(start + k - 1) % n].Inverse());
          low_water = std::min(low_water, next.size());
        }
        for (std::size_t k = i + m; k < cur.size(); ++k) {
          PushReduced(next, cur[k]);
          low_water = std::min(low_water, next.size());
        }
        cur = std::move(next);
        scan_from = low_water > n ? low_water - n : 0;
        changed = true;
      }
    }
  }
  return Word(cur);
}

bool IsTrivial(const Word& w, const Presentation& presentation) {
  if (presentation.is_free()) return w.empty();
  return DehnReduce(w, presentation).empty();
}

bool GroupEqual(const Word& u, const Word& v, const Presentation& presentation) {
  return IsTrivial(u * v.Inverse(), presentation);
}

Word HandlebodyRetract(const Word& w, int genus) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const Letter& l : w.letters()) {
    if (l.generator > 2 * genus) {
      throw InputError("handlebody_retract: generator outside genus");
    }
    if (l.generator % 2 == 1) out.push_back({(l.generator + 1) / 2, l.sign});
  }
  return Word(out);
}

std::string Format(const Word& w, const Presentation& presentation) {
  if (w.empty()) return "e";
  std::ostringstream os;
  for (const Letter& l : w.letters()) {
    if (presentation.is_free()) {
      os << (l.sign > 0 ? 'x' : 'X') << l.generator;
    } else {
      const bool is_a = l.generator % 2 == 1;
      const int index = (l.generator + 1) / 2;
      char c = is_a ? 'a' : 'b';
      if (l.sign < 0) c = static_cast<char>(std::toupper(c));
      os << c << index;
    }
  }
  return os.str();
}

Word Parse(std::string_view text, const Presentation& presentation) {
  std::vector<Letter> raw;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw InputError("cannot parse word '" + std::string(text) + "': " + why);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
      ++i;
      continue;
    }
    if (c == 'e' && raw.empty()) {
      ++i;
      continue;
    }
    const char lower =
        static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const int sign = std::isupper(static_cast<unsigned char>(c)) ? -1 : 1;
    ++i;
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    if (j == i) fail("letter without index");
    const int index = std::stoi(std::string(text.substr(i, j - i)));
    i = j;
    int generator = 0;
    if (presentation.is_free()) {
      if (lower != 'x') fail("free groups use x1..xk");
      generator = index;
    } else {
      if (lower == 'a') {
        generator = 2 * index - 1;
      } else if (lower == 'b') {
        generator = 2 * index;
      } else {
        fail("surface groups use a_i, b_i");
      }
    }
    raw.push_back({generator, sign});
  }
  return Reduce(raw, presentation);
}

}  // namespace homeoqm
