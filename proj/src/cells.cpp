#include "ergolab/cells.hpp"

#include <algorithm>
#include <cmath>

namespace ergolab {

RatInterval AdicInterval::to_interval(int base) const {
  Int scale = pow_int(static_cast<unsigned>(base), static_cast<unsigned>(generation));
  Rat lo(index, scale);
  lo.canonicalize();
  Rat hi(index + 1, scale);
  hi.canonicalize();
  return {lo, hi};
}

Box CellBox::to_box(const ExpandingToralSystem& sys) const {
  Box b;
  b.axes.push_back(x.to_interval(sys.base(0)));
  if (sys.dim() == 2) b.axes.push_back(y.to_interval(sys.base(1)));
  return b;
}

ApproxSquare approx_square_at(const ExpandingToralSystem& sys, const SymbolicPoint& p, int k) {
  if (k < 1) throw ValidationError("approximate square needs generation >= 1");
  if (static_cast<std::size_t>(k) > p.usable_length())
    throw BudgetError("point has fewer digits than requested generation");
  ApproxSquare sq;
  sq.k = k;
  sq.l = sys.dim() == 2 ? sys.split_index(k) : k;
  Int ix(0), iy(0);
  for (int t = 1; t <= k; ++t) ix = ix * sys.base(0) + p.digit_at(0, t);
  sq.cell.x = {k, ix};
  double logm = std::log(static_cast<double>(sys.base(0)));
  if (sys.dim() == 2) {
    for (int t = 1; t <= sq.l; ++t) iy = iy * sys.base(1) + p.digit_at(1, t);
    sq.cell.y = {sq.l, iy};
    double logn = std::log(static_cast<double>(sys.base(1)));
    sq.log_side = -0.5 * (k * logm + sq.l * logn);
    sq.log_diameter = -sq.l * logn;  // n^-l >= m^-k
  } else {
    sq.log_side = -k * logm;
    sq.log_diameter = sq.log_side;
  }
  return sq;
}

CellUnion::CellUnion(SystemPtr sys, int gen_x, int gen_y)
    : sys_(std::move(sys)), gen_x_(gen_x), gen_y_(sys_->dim() == 2 ? gen_y : 0) {
  Int mx = pow_int(static_cast<unsigned>(sys_->base(0)), static_cast<unsigned>(gen_x_));
  Int ny = sys_->dim() == 2
               ? pow_int(static_cast<unsigned>(sys_->base(1)), static_cast<unsigned>(gen_y_))
               : Int(1);
  Int prod = mx * ny;
  if (mpz_sizeinbase(prod.get_mpz_t(), 2) > 62)
    throw BudgetError("cell union generation too deep to enumerate");
  stride_ = mpz_get_ui(ny.get_mpz_t());
}

std::uint64_t CellUnion::pack(std::uint64_t ix, std::uint64_t iy) const {
  return ix * stride_ + iy;
}

void CellUnion::insert_packed(std::uint64_t key) { cells_.insert(key); }

Rat CellUnion::cell_measure(std::uint64_t ix, std::uint64_t iy) const {
  // Digit paths of the cell indices, most significant first.
  int gx = gen_x_, gy = gen_y_;
  std::vector<int> xs(gx), ys(gy);
  for (int t = gx - 1; t >= 0; --t) {
    xs[t] = static_cast<int>(ix % sys_->base(0));
    ix /= sys_->base(0);
  }
  for (int t = gy - 1; t >= 0; --t) {
    ys[t] = static_cast<int>(iy % sys_->base(1));
    iy /= sys_->base(1);
  }
  // Symbols are i.i.d. across positions, so the joint prefix mass is a
  // per-position product of constrained symbol sums.
  Rat out(1);
  int depth = std::max(gx, gy);
  for (int t = 0; t < depth; ++t) {
    if (t < gx && t < gy) {
      int idx = sys_->symbol_index(xs[t], ys[t]);
      if (idx < 0) return Rat(0);
      out *= sys_->prob(idx);
    } else if (t < gx) {
      out *= sys_->marginal(0)[xs[t]];
    } else {
      out *= sys_->marginal(1)[ys[t]];
    }
    if (sgn(out) == 0) return out;
  }
  return out;
}

void CellUnion::finalize() {
  measure_ = 0;
  for (std::uint64_t key : cells_) measure_ += cell_measure(key / stride_, key % stride_);
}

CellUnion CellUnion::from_cells(SystemPtr sys, const std::vector<CellBox>& cells,
                                std::size_t max_cells) {
  int gx = 0, gy = 0;
  for (const CellBox& c : cells) {
    gx = std::max(gx, c.x.generation);
    if (sys->dim() == 2) gy = std::max(gy, c.y.generation);
  }
  CellUnion u(sys, gx, gy);
  for (const CellBox& c : cells) {
    if (c.x.index < 0 ||
        c.x.index >= pow_int(static_cast<unsigned>(sys->base(0)),
                             static_cast<unsigned>(c.x.generation)))
      throw ValidationError("cell index out of range on axis 0");
    Int rx = pow_int(static_cast<unsigned>(sys->base(0)),
                     static_cast<unsigned>(gx - c.x.generation));
    Int ry(1);
    Int y0(0);
    if (sys->dim() == 2) {
      if (c.y.index < 0 ||
          c.y.index >= pow_int(static_cast<unsigned>(sys->base(1)),
                               static_cast<unsigned>(c.y.generation)))
        throw ValidationError("cell index out of range on axis 1");
      ry = pow_int(static_cast<unsigned>(sys->base(1)),
                   static_cast<unsigned>(gy - c.y.generation));
      y0 = c.y.index * ry;
    }
    Int x0 = c.x.index * rx;
    std::uint64_t nx = mpz_get_ui(rx.get_mpz_t());
    std::uint64_t ny = mpz_get_ui(ry.get_mpz_t());
    if (u.cells_.size() + nx * ny > max_cells)
      throw BudgetError("cell union refinement exceeds budget");
    std::uint64_t bx = mpz_get_ui(x0.get_mpz_t());
    std::uint64_t by = mpz_get_ui(y0.get_mpz_t());
    for (std::uint64_t a = 0; a < nx; ++a)
      for (std::uint64_t b = 0; b < ny; ++b) u.cells_.insert(u.pack(bx + a, by + b));
  }
  u.finalize();
  return u;
}

CellUnion CellUnion::from_words(SystemPtr sys, const std::vector<Word>& words,
                                std::size_t max_cells) {
  std::vector<CellBox> cells;
  cells.reserve(words.size());
  for (const Word& w : words) cells.push_back(word_cell(*sys, w));
  return from_cells(std::move(sys), cells, max_cells);
}

CellUnion CellUnion::whole_space(SystemPtr sys) {
  CellUnion u(sys, 0, 0);
  u.cells_.insert(0);
  u.finalize();
  return u;
}

bool CellUnion::contains(const SymbolicPoint& p) const {
  int need = std::max(gen_x_, gen_y_);
  if (p.usable_length() < static_cast<std::size_t>(need))
    throw BudgetError("point has fewer digits than the union generation");
  std::uint64_t ix = 0, iy = 0;
  for (int t = 1; t <= gen_x_; ++t) ix = ix * sys_->base(0) + p.digit_at(0, t);
  if (sys_->dim() == 2)
    for (int t = 1; t <= gen_y_; ++t) iy = iy * sys_->base(1) + p.digit_at(1, t);
  return contains_indices(ix, iy);
}

bool CellUnion::contains_indices(std::uint64_t ix, std::uint64_t iy) const {
  return cells_.contains(pack(ix, iy));
}

CellUnion CellUnion::intersect(const CellUnion& other) const {
  const CellUnion* coarse = this;
  const CellUnion* fine = &other;
  if (coarse->gen_x_ > fine->gen_x_ || coarse->gen_y_ > fine->gen_y_) std::swap(coarse, fine);
  if (coarse->gen_x_ > fine->gen_x_ || coarse->gen_y_ > fine->gen_y_)
    throw ValidationError("cell unions with incomparable generations");
  // Lift the coarse union to the fine generation, then intersect.
  CellUnion lifted(fine->sys_, fine->gen_x_, fine->gen_y_);
  std::vector<CellBox> coarse_cells = coarse->cells();
  std::uint64_t rx = 1, ry = 1;
  for (int t = coarse->gen_x_; t < fine->gen_x_; ++t) rx *= sys_->base(0);
  if (sys_->dim() == 2)
    for (int t = coarse->gen_y_; t < fine->gen_y_; ++t) ry *= sys_->base(1);
  for (const CellBox& c : coarse_cells) {
    std::uint64_t bx = mpz_get_ui(Int(c.x.index).get_mpz_t()) * rx;
    std::uint64_t by = sys_->dim() == 2 ? mpz_get_ui(Int(c.y.index).get_mpz_t()) * ry : 0;
    for (std::uint64_t a = 0; a < rx; ++a)
      for (std::uint64_t b = 0; b < ry; ++b) {
        std::uint64_t key = lifted.pack(bx + a, by + b);
        if (fine->cells_.contains(key)) lifted.cells_.insert(key);
      }
  }
  lifted.finalize();
  return lifted;
}

CellUnion CellUnion::complement() const {
  CellUnion out(sys_, gen_x_, gen_y_);
  Int mx = pow_int(static_cast<unsigned>(sys_->base(0)), static_cast<unsigned>(gen_x_));
  std::uint64_t nx = mpz_get_ui(mx.get_mpz_t());
  std::uint64_t ny = stride_;
  if (nx * ny > (1ULL << 24)) throw BudgetError("complement too large to enumerate");
  for (std::uint64_t a = 0; a < nx; ++a)
    for (std::uint64_t b = 0; b < ny; ++b) {
      std::uint64_t key = pack(a, b);
      if (!cells_.contains(key)) out.cells_.insert(key);
    }
  out.finalize();
  return out;
}

std::vector<CellBox> CellUnion::cells() const {
  std::vector<std::uint64_t> keys(cells_.begin(), cells_.end());
  std::sort(keys.begin(), keys.end());
  std::vector<CellBox> out;
  out.reserve(keys.size());
  for (std::uint64_t key : keys) {
    CellBox c;
    c.x = {gen_x_, Int(static_cast<unsigned long>(key / stride_))};
    c.y = {gen_y_, Int(static_cast<unsigned long>(key % stride_))};
    out.push_back(c);
  }
  return out;
}

CellBox word_cell(const ExpandingToralSystem& sys, const Word& w) {
  CellBox c;
  Int ix(0), iy(0);
  for (std::uint8_t s : w) {
    if (s >= sys.alphabet_size()) throw ValidationError("word symbol index out of range");
    ix = ix * sys.base(0) + sys.symbol(s).i;
    if (sys.dim() == 2) iy = iy * sys.base(1) + sys.symbol(s).j;
  }
  c.x = {static_cast<int>(w.size()), ix};
  c.y = {sys.dim() == 2 ? static_cast<int>(w.size()) : 0, iy};
  return c;
}

}  // namespace ergolab
