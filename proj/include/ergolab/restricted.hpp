#pragma once

#include <cstdint>
#include <vector>

#include "ergolab/cells.hpp"
#include "ergolab/measure.hpp"

namespace ergolab {

// The normalized restriction mu_A(.) = mu(A and .) / mu(A) for a finite
// cell union A with positive exact mass. Query brackets are sums of
// region brackets over the canonical cells of A, rescaled by 1/mu(A).
class RestrictedMeasure : public BallMeasure {
 public:
  RestrictedMeasure(SystemPtr sys, CellUnion a);

  const CellUnion& support_cells() const { return a_; }
  const Rat& total_mass() const { return mass_; }  // mu(A), unnormalized
  const ExpandingToralSystem& system() const { return *sys_; }
  SystemPtr system_ptr() const { return sys_; }

  // Bracket on mu(E and A), unnormalized.
  MeasureInterval region_unnormalized(const Box& box, int depth) const;

  // Bracket on mu_A(box).
  MeasureInterval region(const Box& box, int depth) const;

  MeasureInterval ball(const std::vector<Rat>& center, const Rat& r, int depth) const override;
  int dim() const override { return sys_->dim(); }

  // Exact mu_A of a cell union (both refined to a common generation).
  Rat cell_union_mass(const CellUnion& e) const;

  // Rejection-samples a point of A: draws mu-typical digit prefixes until
  // the prefix lands in A. Deterministic in (seed, stream).
  SymbolicPoint sample(std::size_t length, std::uint64_t seed, std::uint64_t stream,
                       std::size_t max_attempts = 100000) const;

 private:
  SystemPtr sys_;
  CellUnion a_;
  Rat mass_;
  std::vector<Box> cell_boxes_;
};

// Diagnostics mirroring the restricted-set requirements used by the
// covering experiments: the spread of sampled local dimensions and the
// boundary-mass bracket of test balls.
struct RestrictionDiagnostics {
  double local_dim_min = 0.0;
  double local_dim_max = 0.0;
  double local_dim_mean = 0.0;
  // Bracket widths of mu_A(B(x,r)) at the probe radii: an upper bound on
  // the boundary mass the enumeration could not resolve.
  std::vector<double> ball_bracket_widths;
  int samples = 0;
};

RestrictionDiagnostics restriction_diagnostics(const RestrictedMeasure& mu, int generation,
                                               int samples, std::uint64_t seed);

RestrictedMeasure restrict_measure(SystemPtr sys, const CellUnion& a);

}  // namespace ergolab
