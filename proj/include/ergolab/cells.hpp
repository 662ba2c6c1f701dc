#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "ergolab/point.hpp"
#include "ergolab/rational.hpp"
#include "ergolab/system.hpp"

namespace ergolab {

// Rational interval; treated as [lo, hi) when lo < hi. A degenerate
// interval (lo == hi) stands for the point itself and is kept only for
// boundary-mass queries.
struct RatInterval {
  Rat lo{0};
  Rat hi{0};

  bool empty() const { return lo > hi; }
  bool degenerate() const { return lo == hi; }
  bool covers_unit() const { return lo <= 0 && hi >= 1; }
};

// Axis-aligned box, one interval per axis.
struct Box {
  std::vector<RatInterval> axes;
};

// Per-axis adic cell: [k / b^g, (k+1) / b^g) in the base of that axis.
struct AdicInterval {
  int generation = 0;
  Int index{0};
  RatInterval to_interval(int base) const;
};

struct CellBox {
  AdicInterval x;
  AdicInterval y;  // ignored for dim-1 systems
  Box to_box(const ExpandingToralSystem& sys) const;
};

// Approximate square at a digit prefix: x side m^-k, y side n^-l with
// l the largest integer satisfying n^l <= m^k, so the box is square up
// to a factor n. Its measure is prod_{t<=l} p_{w_t} * prod_{l<t<=k} q_{i_t}.
struct ApproxSquare {
  int k = 0;
  int l = 0;
  CellBox cell;
  // log of the geometric-mean side (m^-k n^-l)^(1/2); for dim 1 just -k log m.
  double log_side = 0.0;
  double log_diameter = 0.0;  // sup-norm diameter: max side
};

ApproxSquare approx_square_at(const ExpandingToralSystem& sys, const SymbolicPoint& p, int k);

// Finite union of cells, canonicalized to one generation per axis; the
// canonical form is a set of packed (kx, ky) index pairs, which keeps
// exact measure sums, intersections and orbit membership tests O(1) per
// cell. Refinement is capped to keep unions enumerable.
class CellUnion {
 public:
  CellUnion(SystemPtr sys, int gen_x, int gen_y);

  static CellUnion from_cells(SystemPtr sys, const std::vector<CellBox>& cells,
                              std::size_t max_cells = 1 << 20);
  static CellUnion from_words(SystemPtr sys, const std::vector<Word>& words,
                              std::size_t max_cells = 1 << 20);
  static CellUnion whole_space(SystemPtr sys);

  int gen_x() const { return gen_x_; }
  int gen_y() const { return gen_y_; }
  std::size_t cell_count() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  // Exact measure: sum over canonical cells.
  const Rat& measure() const { return measure_; }

  // Does the point (given as digit prefixes) lie in the union? Decidable
  // from the first gen_x/gen_y digits alone.
  bool contains(const SymbolicPoint& p) const;
  bool contains_indices(std::uint64_t ix, std::uint64_t iy) const;

  CellUnion intersect(const CellUnion& other) const;
  CellUnion complement() const;

  std::vector<CellBox> cells() const;
  const std::unordered_set<std::uint64_t>& packed() const { return cells_; }

  const ExpandingToralSystem& system() const { return *sys_; }
  SystemPtr system_ptr() const { return sys_; }

  std::uint64_t pack(std::uint64_t ix, std::uint64_t iy) const;
  void insert_packed(std::uint64_t key);
  void finalize();  // recompute the cached measure

  // Exact measure of a single canonical cell.
  Rat cell_measure(std::uint64_t ix, std::uint64_t iy) const;

 private:
  SystemPtr sys_;
  int gen_x_ = 0;
  int gen_y_ = 0;
  std::uint64_t stride_ = 1;  // n^gen_y, for packing
  std::unordered_set<std::uint64_t> cells_;
  Rat measure_{0};
};

// Word -> cell of the cylinder rectangle: x at generation |w| in base m,
// y at generation |w| in base n.
CellBox word_cell(const ExpandingToralSystem& sys, const Word& w);

}  // namespace ergolab
