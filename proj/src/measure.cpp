#include "ergolab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ergolab {

namespace {

enum class AxisClass { kEmpty, kFull, kPartial, kDegenerate };

AxisClass classify(const RatInterval& iv) {
  if (iv.lo > iv.hi) return AxisClass::kEmpty;
  if (iv.degenerate())
    return (iv.lo < 0 || iv.lo > 1) ? AxisClass::kEmpty : AxisClass::kDegenerate;
  if (iv.hi <= 0 || iv.lo >= 1) return AxisClass::kEmpty;
  if (iv.lo <= 0 && iv.hi >= 1) return AxisClass::kFull;
  return AxisClass::kPartial;
}

// Preimage of the interval inside digit cell d, rescaled to [0,1]. An
// empty result is returned as the sentinel {1,0}; a query that was
// degenerate stays a point query, but a fat query never degenerates.
RatInterval child_interval(const RatInterval& iv, int digit, int base) {
  RatInterval out;
  out.lo = iv.lo * base - digit;
  out.hi = iv.hi * base - digit;
  if (iv.degenerate()) {
    if (out.lo < 0 || out.lo > 1) return {Rat(1), Rat(0)};
    return out;
  }
  if (out.hi <= 0 || out.lo >= 1) return {Rat(1), Rat(0)};
  if (out.lo < 0) out.lo = 0;
  if (out.hi > 1) out.hi = 1;
  return out;
}

MeasureInterval marg_rec(const ExpandingToralSystem& sys, int axis, const RatInterval& iv,
                         int depth) {
  switch (classify(iv)) {
    case AxisClass::kEmpty:
      return {Rat(0), Rat(0), depth};
    case AxisClass::kFull:
      return {Rat(1), Rat(1), depth};
    default:
      break;
  }
  if (depth <= 0) return {Rat(0), Rat(1), 0};
  MeasureInterval acc{Rat(0), Rat(0), depth};
  const auto& weights = sys.marginal(axis);
  int base = sys.base(axis);
  for (int d = 0; d < base; ++d) {
    if (sgn(weights[d]) == 0) continue;
    RatInterval child = child_interval(iv, d, base);
    if (classify(child) == AxisClass::kEmpty) continue;
    MeasureInterval r = marg_rec(sys, axis, child, depth - 1);
    acc.lower += weights[d] * r.lower;
    acc.upper += weights[d] * r.upper;
  }
  return acc;
}

MeasureInterval region_rec(const ExpandingToralSystem& sys, const RatInterval& x,
                           const RatInterval& y, int depth) {
  AxisClass cx = classify(x);
  AxisClass cy = classify(y);
  if (cx == AxisClass::kEmpty || cy == AxisClass::kEmpty) return {Rat(0), Rat(0), depth};
  if (cx == AxisClass::kFull && cy == AxisClass::kFull) return {Rat(1), Rat(1), depth};
  if (cx == AxisClass::kFull) return marg_rec(sys, 1, y, depth);
  if (cy == AxisClass::kFull) return marg_rec(sys, 0, x, depth);
  if (depth <= 0) return {Rat(0), Rat(1), 0};

  // Transformed child intervals, shared across symbols with equal digits.
  std::vector<RatInterval> xs(sys.base(0)), ys(sys.base(1));
  std::vector<bool> x_ready(sys.base(0), false), y_ready(sys.base(1), false);
  MeasureInterval acc{Rat(0), Rat(0), depth};
  for (std::size_t s = 0; s < sys.alphabet_size(); ++s) {
    if (sgn(sys.prob(s)) == 0) continue;
    int i = sys.symbol(s).i;
    int j = sys.symbol(s).j;
    if (!x_ready[i]) {
      xs[i] = child_interval(x, i, sys.base(0));
      x_ready[i] = true;
    }
    if (classify(xs[i]) == AxisClass::kEmpty) continue;
    if (!y_ready[j]) {
      ys[j] = child_interval(y, j, sys.base(1));
      y_ready[j] = true;
    }
    if (classify(ys[j]) == AxisClass::kEmpty) continue;
    MeasureInterval r = region_rec(sys, xs[i], ys[j], depth - 1);
    acc.lower += sys.prob(s) * r.lower;
    acc.upper += sys.prob(s) * r.upper;
  }
  return acc;
}

}  // namespace

MeasureInterval bracket_sum(const MeasureInterval& a, const MeasureInterval& b) {
  return {a.lower + b.lower, a.upper + b.upper, std::min(a.depth, b.depth)};
}

Rat approx_square_measure(const ExpandingToralSystem& sys, const SymbolicPoint& p, int k) {
  if (k < 1) throw ValidationError("generation must be >= 1");
  if (static_cast<std::size_t>(k) > p.usable_length())
    throw BudgetError("point has fewer digits than requested generation");
  Rat out(1);
  if (sys.dim() == 1) {
    for (int t = 1; t <= k; ++t) out *= sys.prob(p.symbol_at(t));
    return out;
  }
  int l = sys.split_index(k);
  for (int t = 1; t <= l; ++t) out *= sys.prob(p.symbol_at(t));
  for (int t = l + 1; t <= k; ++t) out *= sys.marginal(0)[p.digit_at(0, t)];
  return out;
}

MeasureInterval marginal_measure(const ExpandingToralSystem& sys, int axis,
                                 const RatInterval& iv, int depth) {
  if (axis < 0 || axis >= sys.dim()) throw ValidationError("axis out of range");
  MeasureInterval out = marg_rec(sys, axis, iv, depth);
  out.depth = depth;
  return out;
}

MeasureInterval region_measure(const ExpandingToralSystem& sys, const Box& box, int depth) {
  if (static_cast<int>(box.axes.size()) != sys.dim())
    throw ValidationError("box dimension does not match the system");
  if (depth < 0) throw ValidationError("depth must be >= 0");
  MeasureInterval out;
  if (sys.dim() == 1) {
    out = marg_rec(sys, 0, box.axes[0], depth);
  } else {
    out = region_rec(sys, box.axes[0], box.axes[1], depth);
  }
  out.depth = depth;
  return out;
}

Rat marginal_cdf(const ExpandingToralSystem& sys, int axis, const Rat& c,
                 std::size_t max_steps) {
  if (axis < 0 || axis >= sys.dim()) throw ValidationError("axis out of range");
  if (c <= 0) return Rat(0);
  if (c >= 1) return Rat(1);
  const auto& weights = sys.marginal(axis);
  int base = sys.base(axis);
  std::vector<Rat> below(base + 1, Rat(0));  // below[d] = sum of weights under digit d
  for (int d = 0; d < base; ++d) below[d + 1] = below[d] + weights[d];

  // Walk the digit expansion of c. State is the remainder c_t in [0,1);
  // a repeated remainder closes a cycle whose contributions form a
  // geometric series: F = A + P * (A_cyc / (1 - r_cyc)).
  std::map<Rat, std::pair<Rat, Rat>> seen;  // remainder -> (acc at entry, prefix mass at entry)
  Rat acc(0);     // accumulated CDF mass
  Rat mass(1);    // probability of matching the digit prefix so far
  Rat rem = c;
  for (std::size_t step = 0; step < max_steps; ++step) {
    if (sgn(rem) == 0) return acc;      // expansion terminated: [0, c) resolved
    if (sgn(mass) == 0) return acc;     // prefix has zero mass; nothing more to add
    auto it = seen.find(rem);
    if (it != seen.end()) {
      const Rat& acc0 = it->second.first;
      const Rat& mass0 = it->second.second;
      // One full cycle multiplies the prefix mass by rho and adds delta.
      Rat rho = mass / mass0;
      Rat delta = acc - acc0;
      if (rho >= 1) throw BudgetError("non-contracting digit cycle");
      return acc0 + delta / (1 - rho);
    }
    seen.emplace(rem, std::make_pair(acc, mass));
    Rat scaled = rem * base;
    Int digit = floor_rat(scaled);
    long d = digit.get_si();
    acc += mass * below[d];
    mass *= weights[d];
    rem = scaled - Rat(digit);
  }
  throw BudgetError("digit expansion period exceeds the step budget");
}

Rat projection_measure(const ExpandingToralSystem& sys, int axis, const RatInterval& iv) {
  RatInterval clipped{std::max(iv.lo, Rat(0)), std::min(iv.hi, Rat(1))};
  if (clipped.lo >= clipped.hi) return Rat(0);
  return marginal_cdf(sys, axis, clipped.hi) - marginal_cdf(sys, axis, clipped.lo);
}

std::vector<Box> ball_boxes(int dim, const std::vector<Rat>& center, const Rat& r) {
  std::vector<std::vector<RatInterval>> pieces(dim);
  for (int axis = 0; axis < dim; ++axis) {
    Rat c = center[axis];
    c -= Rat(floor_rat(c));  // reduce mod 1
    Rat lo = c - r, hi = c + r;
    if (2 * r >= 1) {
      pieces[axis].push_back({Rat(0), Rat(1)});
    } else if (lo < 0) {
      pieces[axis].push_back({Rat(0), hi});
      pieces[axis].push_back({lo + 1, Rat(1)});
    } else if (hi > 1) {
      pieces[axis].push_back({lo, Rat(1)});
      pieces[axis].push_back({Rat(0), hi - 1});
    } else {
      pieces[axis].push_back({lo, hi});
    }
  }
  std::vector<Box> out;
  if (dim == 1) {
    for (const auto& px : pieces[0]) out.push_back(Box{{px}});
  } else {
    for (const auto& px : pieces[0])
      for (const auto& py : pieces[1]) out.push_back(Box{{px, py}});
  }
  return out;
}

MeasureInterval ball_measure(const ExpandingToralSystem& sys, const std::vector<Rat>& center,
                             const Rat& r, int depth) {
  if (sgn(r) < 0) throw ValidationError("ball radius must be >= 0");
  if (static_cast<int>(center.size()) != sys.dim())
    throw ValidationError("center dimension does not match the system");
  if (2 * r >= 1) return {Rat(1), Rat(1), depth};
  MeasureInterval acc{Rat(0), Rat(0), depth};
  for (const Box& b : ball_boxes(sys.dim(), center, r))
    acc = bracket_sum(acc, region_measure(sys, b, depth));
  acc.depth = depth;
  return acc;
}

RadiusBracket inverse_radius(const BallMeasure& mu, const std::vector<Rat>& center, const Rat& t,
                             const Rat& tol, int max_depth) {
  if (sgn(t) <= 0 || t > 1) throw ValidationError("target mass must lie in (0,1]");
  if (sgn(tol) <= 0) throw ValidationError("tolerance must be positive");

  // Relaxed sandwich: mu(B(lo)).upper <= t(1+tol) and mu(B(hi)).lower >=
  // t(1-tol). The relaxation keeps bisection moving when it lands exactly
  // on the crossing radius, where no finite-depth bracket can separate.
  Rat tol_mass = t * tol;
  auto certify = [&](const Rat& r, bool& below, bool& above, int& depth_used) {
    below = above = false;
    for (int depth = 16; depth <= max_depth; depth += 8) {
      MeasureInterval b = mu.ball(center, r, depth);
      depth_used = depth;
      if (b.upper <= t + tol_mass) {
        below = true;
        return;
      }
      if (b.lower >= t - tol_mass) {
        above = true;
        return;
      }
    }
  };

  RadiusBracket out;
  out.lo = 0;
  out.hi = make_rat(1, 2);
  bool below = false, above = false;
  int depth_used = 16;
  certify(out.lo, below, above, depth_used);
  out.depth_used = depth_used;
  if (!below) return out;  // point mass at the center exceeds t: flag as unresolved

  while (out.hi - out.lo > tol) {
    Rat mid = (out.lo + out.hi) / 2;
    certify(mid, below, above, depth_used);
    out.depth_used = std::max(out.depth_used, depth_used);
    if (below) {
      out.lo = mid;
    } else if (above) {
      out.hi = mid;
    } else {
      return out;  // bracket straddles t beyond the depth budget
    }
  }
  out.converged = true;
  return out;
}

LocalDimensionEstimate local_dimension(const ExpandingToralSystem& sys, const SymbolicPoint& p,
                                       int k) {
  LocalDimensionEstimate out;
  out.generation = k;
  out.cell_mass = approx_square_measure(sys, p, k);
  double logm = std::log(static_cast<double>(sys.base(0)));
  if (sys.dim() == 1) {
    out.log_side = -k * logm;
  } else {
    int l = sys.split_index(k);
    double logn = std::log(static_cast<double>(sys.base(1)));
    out.log_side = -0.5 * (k * logm + l * logn);
  }
  if (sgn(out.cell_mass) == 0) {
    out.off_support = true;
    return out;
  }
  out.value = log_rat(out.cell_mass) / out.log_side;
  return out;
}

DimensionReport measure_dimension(SystemPtr sys, int generation, int samples,
                                  std::uint64_t seed) {
  DimensionReport rep;
  rep.closed_form = sys->dimension_closed_form();
  rep.generation = generation;
  rep.samples = samples;
  double sum = 0.0, sumsq = 0.0;
  for (int s = 0; s < samples; ++s) {
    SymbolicPoint p = sample_point(sys, static_cast<std::size_t>(generation), seed,
                                   static_cast<std::uint64_t>(s));
    LocalDimensionEstimate est = local_dimension(*sys, p, generation);
    sum += est.value;
    sumsq += est.value * est.value;
  }
  rep.monte_carlo = sum / samples;
  double var = std::max(0.0, sumsq / samples - rep.monte_carlo * rep.monte_carlo);
  rep.stderr_mc = std::sqrt(var / samples);
  rep.consistent = std::abs(rep.monte_carlo - rep.closed_form) <= 3.0 * rep.stderr_mc;
  return rep;
}

}  // namespace ergolab
