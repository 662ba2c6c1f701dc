#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ergolab/cells.hpp"
#include "ergolab/measure.hpp"
#include "ergolab/system.hpp"

// Independent brute-force oracles. These deliberately avoid the library's
// pruned enumerations: everything is a flat loop over full generations.
namespace ergolab::testing {

inline void enumerate_words(const ExpandingToralSystem& sys, int len,
                            const std::function<void(const Word&)>& fn) {
  Word w(static_cast<std::size_t>(len), 0);
  std::function<void(int)> rec = [&](int t) {
    if (t == len) {
      fn(w);
      return;
    }
    for (std::size_t s = 0; s < sys.alphabet_size(); ++s) {
      w[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(s);
      rec(t + 1);
    }
  };
  rec(0);
}

// Classification of a generation-g cylinder rectangle against a box,
// with the same half-open conventions as the engine.
inline MeasureInterval brute_region(const ExpandingToralSystem& sys, const Box& box, int gen) {
  MeasureInterval out{Rat(0), Rat(0), gen};
  enumerate_words(sys, gen, [&](const Word& w) {
    Rat p = cylinder_measure(sys, w);
    if (sgn(p) == 0) return;
    CellBox cell = word_cell(sys, w);
    Box cb = cell.to_box(sys);
    bool contained = true, overlaps = true;
    for (int axis = 0; axis < sys.dim(); ++axis) {
      const RatInterval& q = box.axes[static_cast<std::size_t>(axis)];
      const RatInterval& c = cb.axes[static_cast<std::size_t>(axis)];
      if (q.degenerate()) {
        contained = false;
        if (!(q.lo >= c.lo && q.lo <= c.hi)) overlaps = false;  // closed cell holds the point
      } else {
        if (!(q.lo <= c.lo && q.hi >= c.hi)) contained = false;
        if (!(q.lo < c.hi && q.hi > c.lo)) overlaps = false;
      }
    }
    if (contained) out.lower += p;
    if (overlaps) out.upper += p;
  });
  return out;
}

// mu(A and T^-n(B)) by flat enumeration of generation max(gen(A), n + gen(B)).
inline Rat brute_correlation(const ExpandingToralSystem& sys, const CellUnion& a,
                             const CellUnion& b, int n) {
  int ga = std::max(a.gen_x(), a.gen_y());
  int gb = std::max(b.gen_x(), b.gen_y());
  int depth = std::max(ga, n + gb);
  Rat total(0);
  enumerate_words(sys, depth, [&](const Word& w) {
    Rat p = cylinder_measure(sys, w);
    if (sgn(p) == 0) return;
    std::uint64_t ix = 0, iy = 0;
    for (int t = 0; t < a.gen_x(); ++t) ix = ix * sys.base(0) + sys.symbol(w[t]).i;
    if (sys.dim() == 2)
      for (int t = 0; t < a.gen_y(); ++t) iy = iy * sys.base(1) + sys.symbol(w[t]).j;
    if (!a.contains_indices(ix, iy)) return;
    std::uint64_t sx = 0, sy = 0;
    for (int t = n; t < n + b.gen_x(); ++t) sx = sx * sys.base(0) + sys.symbol(w[t]).i;
    if (sys.dim() == 2)
      for (int t = n; t < n + b.gen_y(); ++t) sy = sy * sys.base(1) + sys.symbol(w[t]).j;
    if (!b.contains_indices(sx, sy)) return;
    total += p;
  });
  return total;
}

// Histogram of approximate-square measures at generation k, counted via
// multinomial coefficients over (prefix symbol counts, suffix digit
// counts); no cell enumeration involved.
inline std::map<Rat, Int> multinomial_square_histogram(const ExpandingToralSystem& sys, int k) {
  int l = sys.dim() == 2 ? sys.split_index(k) : k;
  int suffix = sys.dim() == 2 ? k - l : 0;

  // counts of prefix words by measure value
  std::map<Rat, Int> prefix_hist;
  {
    // compositions of l over the alphabet
    std::vector<int> counts(sys.alphabet_size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t sym, int left) {
      if (sym + 1 == sys.alphabet_size()) {
        counts[sym] = left;
        Rat v(1);
        for (std::size_t s = 0; s < sys.alphabet_size(); ++s) {
          if (counts[s] > 0 && sgn(sys.prob(s)) == 0) return;
          for (int c = 0; c < counts[s]; ++c) v *= sys.prob(s);
        }
        // multinomial l! / prod counts!
        Int num;
        mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(l));
        for (std::size_t s = 0; s < sys.alphabet_size(); ++s) {
          Int f;
          mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(counts[s]));
          num /= f;
        }
        if (sgn(v) > 0) prefix_hist[v] += num;
        return;
      }
      for (int c = 0; c <= left; ++c) {
        counts[sym] = c;
        rec(sym + 1, left - c);
      }
    };
    if (sys.alphabet_size() == 1) {
      Rat v(1);
      for (int t = 0; t < l; ++t) v *= sys.prob(0);
      prefix_hist[v] = 1;
    } else {
      rec(0, l);
    }
  }

  if (suffix == 0) return prefix_hist;

  // counts of suffix digit words by marginal measure value
  std::map<Rat, Int> suffix_hist;
  {
    const auto& q = sys.marginal(0);
    int base = sys.base(0);
    std::vector<int> counts(static_cast<std::size_t>(base), 0);
    std::function<void(int, int)> rec = [&](int digit, int left) {
      if (digit + 1 == base) {
        counts[static_cast<std::size_t>(digit)] = left;
        Rat v(1);
        bool dead = false;
        for (int d = 0; d < base; ++d) {
          if (counts[static_cast<std::size_t>(d)] > 0 && sgn(q[static_cast<std::size_t>(d)]) == 0)
            dead = true;
          for (int c = 0; c < counts[static_cast<std::size_t>(d)]; ++c)
            v *= q[static_cast<std::size_t>(d)];
        }
        if (dead) return;
        Int num;
        mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(suffix));
        for (int d = 0; d < base; ++d) {
          Int f;
          mpz_fac_ui(f.get_mpz_t(),
                     static_cast<unsigned long>(counts[static_cast<std::size_t>(d)]));
          num /= f;
        }
        suffix_hist[v] += num;
        return;
      }
      for (int c = 0; c <= left; ++c) {
        counts[static_cast<std::size_t>(digit)] = c;
        rec(digit + 1, left - c);
      }
    };
    rec(0, suffix);
  }

  std::map<Rat, Int> out;
  for (const auto& [pv, pc] : prefix_hist)
    for (const auto& [sv, sc] : suffix_hist) out[pv * sv] += pc * sc;
  return out;
}

}  // namespace ergolab::testing
