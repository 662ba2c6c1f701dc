#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ergolab/cells.hpp"
#include "ergolab/point.hpp"
#include "ergolab/rational.hpp"
#include "ergolab/system.hpp"

namespace ergolab {

// Certified two-sided bracket on a measure value. Lower counts cylinder
// mass certainly inside the query, upper adds every cylinder still
// intersecting it at the stopping depth; deepening never widens.
struct MeasureInterval {
  Rat lower{0};
  Rat upper{0};
  int depth = 0;

  Rat width() const { return upper - lower; }
  double mid() const { return rat_to_double(lower + upper) / 2.0; }
};

MeasureInterval bracket_sum(const MeasureInterval& a, const MeasureInterval& b);

// Exact value of prod p over the approximate-square prefix: the first
// l symbols weighted fully, positions l < t <= k by the x-marginal.
Rat approx_square_measure(const ExpandingToralSystem& sys, const SymbolicPoint& p, int k);

// Certified bracket for the self-affine measure of a box. Boxes are
// half-open per axis; a zero-width axis switches that axis to a
// boundary-mass query (lower 0). The enumeration descends only cylinders
// meeting the box and collapses full-axis strips to the 1-D marginal law,
// so the cost is proportional to the boundary, not the volume.
MeasureInterval region_measure(const ExpandingToralSystem& sys, const Box& box, int depth);

// 1-D Bernoulli digit-law bracket (tree route).
MeasureInterval marginal_measure(const ExpandingToralSystem& sys, int axis,
                                 const RatInterval& iv, int depth);

// Exact marginal measure of [0, c) by walking c's digit expansion with
// cycle detection (geometric tail summed in closed form). Throws
// BudgetError when the expansion's period is out of reach.
Rat marginal_cdf(const ExpandingToralSystem& sys, int axis, const Rat& c,
                 std::size_t max_steps = 200000);

// Exact projection measure of a half-open interval via the digit-walk CDF.
Rat projection_measure(const ExpandingToralSystem& sys, int axis, const RatInterval& iv);

// Sup-norm closed ball on the torus decomposed into at most 2^d boxes.
// r >= 1/2 covers the torus and returns [1,1].
MeasureInterval ball_measure(const ExpandingToralSystem& sys, const std::vector<Rat>& center,
                             const Rat& r, int depth);

std::vector<Box> ball_boxes(int dim, const std::vector<Rat>& center, const Rat& r);

// Read-only measure interface shared by the plain and restricted measures.
class BallMeasure {
 public:
  virtual ~BallMeasure() = default;
  virtual MeasureInterval ball(const std::vector<Rat>& center, const Rat& r,
                               int depth) const = 0;
  virtual int dim() const = 0;
};

class PlainMeasure : public BallMeasure {
 public:
  explicit PlainMeasure(SystemPtr sys) : sys_(std::move(sys)) {}
  MeasureInterval ball(const std::vector<Rat>& center, const Rat& r, int depth) const override {
    return ball_measure(*sys_, center, r, depth);
  }
  int dim() const override { return sys_->dim(); }

 private:
  SystemPtr sys_;
};

struct RadiusBracket {
  Rat lo{0};
  Rat hi{0};
  bool converged = false;  // false: depth budget ran out before certifying
  int depth_used = 0;
};

// Bisection on r -> mu(B(c,r)) for the radius where the ball mass crosses
// the target t: certifies ball(lo).upper <= t <= ball(hi).lower, with the
// bracket width at most tol (or flags non-convergence).
RadiusBracket inverse_radius(const BallMeasure& mu, const std::vector<Rat>& center, const Rat& t,
                             const Rat& tol, int max_depth = 48);

struct LocalDimensionEstimate {
  double value = 0.0;
  int generation = 0;
  Rat cell_mass{0};
  double log_side = 0.0;
  bool off_support = false;
};

// log mu(A_k) / log side(A_k) at the generation-k approximate square of
// the point (dim 2) or base-m cell (dim 1); side is the geometric mean
// of the cell extents so the uniform systems report their dimension
// exactly at every generation.
LocalDimensionEstimate local_dimension(const ExpandingToralSystem& sys, const SymbolicPoint& p,
                                       int k);

struct DimensionReport {
  double closed_form = 0.0;
  double monte_carlo = 0.0;
  double stderr_mc = 0.0;
  int generation = 0;
  int samples = 0;
  bool consistent = false;  // |closed_form - monte_carlo| <= 3 stderr
};

DimensionReport measure_dimension(SystemPtr sys, int generation = 40, int samples = 200,
                                  std::uint64_t seed = 1);

}  // namespace ergolab
