#include "ergolab/restricted.hpp"

#include <algorithm>
#include <cmath>

namespace ergolab {

namespace {

RatInterval intersect_iv(const RatInterval& a, const RatInterval& b) {
  RatInterval out{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  return out;
}

}  // namespace

RestrictedMeasure::RestrictedMeasure(SystemPtr sys, CellUnion a)
    : sys_(std::move(sys)), a_(std::move(a)), mass_(a_.measure()) {
  if (sgn(mass_) <= 0) throw ValidationError("restriction set must have positive measure");
  for (const CellBox& c : a_.cells()) cell_boxes_.push_back(c.to_box(*sys_));
}

MeasureInterval RestrictedMeasure::region_unnormalized(const Box& box, int depth) const {
  MeasureInterval acc{Rat(0), Rat(0), depth};
  for (const Box& cell : cell_boxes_) {
    Box clipped = cell;
    bool empty = false;
    for (std::size_t axis = 0; axis < clipped.axes.size(); ++axis) {
      clipped.axes[axis] = intersect_iv(clipped.axes[axis], box.axes[axis]);
      if (clipped.axes[axis].empty()) {
        empty = true;
        break;
      }
      // A degenerate query axis stays degenerate; a degenerate overlap of
      // two fat intervals contributes no interior mass, so drop it unless
      // the query itself was degenerate there.
      if (clipped.axes[axis].degenerate() && !box.axes[axis].degenerate()) {
        empty = true;
        break;
      }
    }
    if (empty) continue;
    acc = bracket_sum(acc, region_measure(*sys_, clipped, depth));
  }
  acc.depth = depth;
  return acc;
}

MeasureInterval RestrictedMeasure::region(const Box& box, int depth) const {
  MeasureInterval raw = region_unnormalized(box, depth);
  MeasureInterval out;
  out.lower = raw.lower / mass_;
  out.upper = raw.upper / mass_;
  if (out.upper > 1) out.upper = 1;
  out.depth = depth;
  return out;
}

MeasureInterval RestrictedMeasure::ball(const std::vector<Rat>& center, const Rat& r,
                                        int depth) const {
  if (2 * r >= 1) return {Rat(1), Rat(1), depth};
  MeasureInterval acc{Rat(0), Rat(0), depth};
  for (const Box& b : ball_boxes(sys_->dim(), center, r))
    acc = bracket_sum(acc, region(b, depth));
  if (acc.upper > 1) acc.upper = 1;
  acc.depth = depth;
  return acc;
}

Rat RestrictedMeasure::cell_union_mass(const CellUnion& e) const {
  CellUnion inter = a_.intersect(e);
  Rat out = inter.measure() / mass_;
  return out;
}

SymbolicPoint RestrictedMeasure::sample(std::size_t length, std::uint64_t seed,
                                        std::uint64_t stream, std::size_t max_attempts) const {
  std::size_t need = static_cast<std::size_t>(std::max(a_.gen_x(), a_.gen_y()));
  if (length < need) throw ValidationError("sample length shorter than restriction generation");
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    SymbolicPoint p = sample_point(sys_, length, seed, stream * max_attempts + attempt);
    if (a_.contains(p)) return p;
  }
  throw BudgetError("rejection sampling failed to land in the restriction set");
}

RestrictionDiagnostics restriction_diagnostics(const RestrictedMeasure& mu, int generation,
                                               int samples, std::uint64_t seed) {
  RestrictionDiagnostics diag;
  diag.samples = samples;
  double lo = 1e300, hi = -1e300, sum = 0.0;
  const auto& sys = mu.system();
  for (int s = 0; s < samples; ++s) {
    SymbolicPoint p = mu.sample(static_cast<std::size_t>(generation), seed,
                                static_cast<std::uint64_t>(s));
    LocalDimensionEstimate est = local_dimension(sys, p, generation);
    if (est.off_support) continue;
    lo = std::min(lo, est.value);
    hi = std::max(hi, est.value);
    sum += est.value;

    std::vector<Rat> center;
    for (int axis = 0; axis < sys.dim(); ++axis) center.push_back(p.coordinate(axis));
    for (int k = 4; k <= 8; k += 2) {
      Rat r = make_rat(1, 1 << k);
      MeasureInterval b = mu.ball(center, r, 20);
      diag.ball_bracket_widths.push_back(rat_to_double(b.width()));
    }
  }
  diag.local_dim_min = lo;
  diag.local_dim_max = hi;
  diag.local_dim_mean = sum / std::max(1, samples);
  return diag;
}

RestrictedMeasure restrict_measure(SystemPtr sys, const CellUnion& a) {
  return RestrictedMeasure(std::move(sys), a);
}

}  // namespace ergolab
