#include "homeoqm/qm.h"

#include <algorithm>
#include <cmath>

#include "homeoqm/errors.h"
#include "homeoqm/parallel.h"
#include "homeoqm/random.h"

namespace homeoqm {
namespace {

long CyclicCountOnCore(const Word& core, const Word& pattern) {
  const std::size_t n = core.size();
  const std::size_t m = pattern.size();
  if (n == 0) return 0;
  long count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool match = true;
    for (std::size_t j = 0; j < m && match; ++j) {
      match = core[(i + j) % n] == pattern[j];
    }
    if (match) ++count;
  }
  return count;
}

}  // namespace

std::string ToString(PreMap m) {
  switch (m) {
    case PreMap::kIdentity:
      return "identity";
    case PreMap::kHandlebodyRetract:
      return "handlebody_retract";
    case PreMap::kTorusRelative:
      return "torus_relative_projection";
  }
  return "?";
}

PreMap ParsePreMap(const std::string& name) {
  if (name == "identity") return PreMap::kIdentity;
  if (name == "handlebody_retract") return PreMap::kHandlebodyRetract;
  if (name == "torus_relative_projection" || name == "torus_relative") {
    return PreMap::kTorusRelative;
  }
  throw InputError("unknown pre_map '" + name + "'");
}

QuasimorphismSpec::QuasimorphismSpec(Presentation base,
                                     std::vector<BrooksPattern> terms,
                                     bool symmetrized, PreMap pre_map)
    : base_(base),
      terms_(std::move(terms)),
      symmetrized_(symmetrized),
      pre_map_(pre_map) {
  if (!base_.is_free()) {
    throw InputError("quasimorphism base must be a free group");
  }
  for (const BrooksPattern& t : terms_) {
    if (t.pattern.empty()) throw InputError("Brooks pattern must be non-empty");
    if (t.pattern.max_generator() > base_.rank()) {
      throw InputError("Brooks pattern uses a generator outside the base rank");
    }
    inverse_patterns_.push_back(t.pattern.Inverse());
  }
  if (symmetrized_ && base_.rank() != 2) {
    throw InputError("symmetrization is defined on F_2 only");
  }
  if (pre_map_ == PreMap::kTorusRelative && base_.rank() != 2) {
    throw InputError("torus relative projection lands in F_2");
  }
}

Word QuasimorphismSpec::ToBase(const Word& source) const {
  switch (pre_map_) {
    case PreMap::kIdentity:
    case PreMap::kTorusRelative:
      if (source.max_generator() > base_.rank()) {
        throw InputError("word uses a generator outside the base rank");
      }
      return source;
    case PreMap::kHandlebodyRetract:
      return HandlebodyRetract(source, base_.rank());
  }
  return source;
}

double QuasimorphismSpec::UnsymmetrizedHomogeneous(const Word& base_word) const {
  const Word core = CyclicReduce(base_word).core;
  double value = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const long diff = CyclicCountOnCore(core, terms_[i].pattern) -
                      CyclicCountOnCore(core, inverse_patterns_[i]);
    value += terms_[i].coefficient * static_cast<double>(diff);
  }
  return value;
}

double QuasimorphismSpec::UnsymmetrizedRaw(const Word& base_word) const {
  double value = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const long diff = CountSubword(base_word, terms_[i].pattern, false) -
                      CountSubword(base_word, inverse_patterns_[i], false);
    value += terms_[i].coefficient * static_cast<double>(diff);
  }
  return value;
}

double QuasimorphismSpec::HomogeneousOnBase(const Word& base_word) const {
  if (!symmetrized_) return UnsymmetrizedHomogeneous(base_word);
  double sum = 0.0;
  for (unsigned mask = 0; mask < 4; ++mask) {
    sum += UnsymmetrizedHomogeneous(InvertGenerators(base_word, mask));
  }
  return sum / 4.0;
}

double QuasimorphismSpec::RawOnBase(const Word& base_word) const {
  if (!symmetrized_) return UnsymmetrizedRaw(base_word);
  double sum = 0.0;
  for (unsigned mask = 0; mask < 4; ++mask) {
    sum += UnsymmetrizedRaw(InvertGenerators(base_word, mask));
  }
  return sum / 4.0;
}

double QuasimorphismSpec::Homogeneous(const Word& source) const {
  return HomogeneousOnBase(ToBase(source));
}

double QuasimorphismSpec::Homogeneous(const TorusBraid& braid) const {
  if (pre_map_ != PreMap::kTorusRelative) {
    throw InputError("torus braids need the torus_relative_projection pre-map");
  }
  return HomogeneousOnBase(braid.rel);
}

double QuasimorphismSpec::Raw(const Word& source) const {
  return RawOnBase(ToBase(source));
}

double BrooksEval(const BrooksPattern& p, const Word& g,
                  const Presentation& base) {
  if (p.pattern.empty()) throw InputError("Brooks pattern must be non-empty");
  if (!base.is_free() || g.max_generator() > base.rank() ||
      p.pattern.max_generator() > base.rank()) {
    throw InputError("brooks_eval: word and pattern must live in the base");
  }
  const long diff = CountSubword(g, p.pattern, false) -
                    CountSubword(g, p.pattern.Inverse(), false);
  return p.coefficient * static_cast<double>(diff);
}

double BrooksHomogeneous(const BrooksPattern& p, const Word& g) {
  if (p.pattern.empty()) throw InputError("Brooks pattern must be non-empty");
  const long diff = CountSubword(g, p.pattern, true) -
                    CountSubword(g, p.pattern.Inverse(), true);
  return p.coefficient * static_cast<double>(diff);
}

Word InvertGenerators(const Word& w, unsigned mask) {
  std::vector<Letter> out(w.letters().begin(), w.letters().end());
  for (Letter& l : out) {
    if (l.generator <= 2 && (mask >> (l.generator - 1)) & 1u) l.sign = -l.sign;
  }
  return Word(out);
}

double SymmetrizeEval(const QuasimorphismSpec& spec, const Word& g) {
  if (spec.base().rank() != 2) {
    throw InputError("symmetrize_eval needs base F_2");
  }
  const Word base_word = spec.ToBase(g);
  const QuasimorphismSpec plain(spec.base(),
                                {spec.terms().begin(), spec.terms().end()},
                                false, PreMap::kIdentity);
  double sum = 0.0;
  for (unsigned mask = 0; mask < 4; ++mask) {
    sum += plain.HomogeneousOnBase(InvertGenerators(base_word, mask));
  }
  return sum / 4.0;
}

double PairDefect(const QuasimorphismSpec& spec, const Word& g, const Word& h,
                  DefectMode mode) {
  if (mode == DefectMode::kRaw) {
    return std::abs(spec.RawOnBase(h) - spec.RawOnBase(g * h) +
                    spec.RawOnBase(g));
  }
  return std::abs(spec.HomogeneousOnBase(h) - spec.HomogeneousOnBase(g * h) +
                  spec.HomogeneousOnBase(g));
}

std::vector<Word> EnumerateReducedWords(int rank, int length) {
  std::vector<Word> out;
  if (length == 0) {
    out.emplace_back();
    return out;
  }
  const int alphabet = 2 * rank;
  std::vector<int> codes(static_cast<std::size_t>(length), 0);
  auto letter = [](int code) {
    return Letter{code / 2 + 1, code % 2 == 0 ? 1 : -1};
  };
  // Odometer over letter codes, skipping cancelling neighbours.
  while (true) {
    bool reduced = true;
    for (int i = 1; i < length && reduced; ++i) {
      reduced = letter(codes[static_cast<std::size_t>(i)]) !=
                letter(codes[static_cast<std::size_t>(i - 1)]).Inverse();
    }
    if (reduced) {
      std::vector<Letter> ls;
      for (int c : codes) ls.push_back(letter(c));
      out.emplace_back(ls);
    }
    int pos = length - 1;
    while (pos >= 0 && ++codes[static_cast<std::size_t>(pos)] == alphabet) {
      codes[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

DefectEstimate EstimateDefect(const QuasimorphismSpec& spec, long trials,
                              int max_len, std::uint64_t seed, DefectMode mode,
                              int workers, int exhaustive_length) {
  if (trials < 1) throw InputError("defect_estimate: trials must be >= 1");
  const int rank = spec.base().rank();
  double best = 0.0;
  if (!spec.terms().empty()) {
    std::vector<Word> shorts;
    for (int len = 0; len <= exhaustive_length; ++len) {
      for (Word& w : EnumerateReducedWords(rank, len)) shorts.push_back(std::move(w));
    }
    for (const Word& g : shorts) {
      for (const Word& h : shorts) best = std::max(best, PairDefect(spec, g, h, mode));
    }
  }
  constexpr long kChunk = 512;
  const auto chunks = static_cast<std::size_t>((trials + kChunk - 1) / kChunk);
  const auto maxima = ParallelMap<double>(chunks, workers, [&](std::size_t c) {
    if (spec.terms().empty()) return 0.0;
    Rng rng(DeriveSeed(seed, c));
    const long begin = static_cast<long>(c) * kChunk;
    const long end = std::min(trials, begin + kChunk);
    double m = 0.0;
    for (long t = begin; t < end; ++t) {
      const auto lg = static_cast<std::size_t>(rng.Between(0, max_len));
      const auto lh = static_cast<std::size_t>(rng.Between(0, max_len));
      const Word g = RandomReducedWord(rng, rank, lg);
      const Word h = RandomReducedWord(rng, rank, lh);
      m = std::max(m, PairDefect(spec, g, h, mode));
    }
    return m;
  });
  for (double m : maxima) best = std::max(best, m);
  return {best, trials, seed};
}

NormalVanishingReport NormalVanishingCheck(const QuasimorphismSpec& spec,
                                           std::span<const TorusBraid> elements,
                                           std::span<const TorusBraid> central) {
  NormalVanishingReport report;
  for (const TorusBraid& c : central) {
    if (!c.rel.empty()) {
      throw InputError("normal_vanishing_check: c must be central (empty rel)");
    }
  }
  for (const TorusBraid& g : elements) {
    const double base = spec.Homogeneous(g);
    for (const TorusBraid& c : central) {
      const double shifted = spec.Homogeneous(g * c);
      const double diff = std::abs(shifted - base);
      ++report.checked;
      if (shifted != base) ++report.violations;
      report.max_abs_difference = std::max(report.max_abs_difference, diff);
    }
  }
  return report;
}

}  // namespace homeoqm
