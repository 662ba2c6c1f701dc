#include "ergolab/hitting.hpp"

#include <algorithm>
#include <cmath>

#include "ergolab/parallel.hpp"

namespace ergolab {

std::optional<std::uint64_t> hitting_time(const SymbolicPoint& x, const std::vector<Rat>& y,
                                          const Rat& r, std::uint64_t horizon) {
  if (sgn(r) <= 0) throw ValidationError("hitting radius must be positive");
  if (horizon > x.usable_length())
    throw BudgetError("horizon exceeds the stored orbit length");
  return first_ball_hit(x, y, r, 0, horizon);
}

std::vector<HittingRecord> hitting_ratio_profile(const SymbolicPoint& x,
                                                 const std::vector<Rat>& y,
                                                 const ProfileParams& params) {
  if (params.k_min < 1 || params.k_max < params.k_min)
    throw ValidationError("bad scale range");
  const auto& sys = x.system();
  std::vector<HittingRecord> out;
  for (int k = params.k_min; k <= params.k_max; ++k) {
    HittingRecord rec;
    rec.k = k;
    rec.r = Rat(Int(1), Int(1) << k);
    rec.r.canonicalize();
    rec.mu_ball = ball_measure(sys, y, rec.r, k + params.depth_guard);
    if (sgn(rec.mu_ball.upper) == 0) {
      // target carries no mass at this scale: no finite waiting time
      rec.truncated = true;
      out.push_back(rec);
      continue;
    }
    // N_r = floor(mu(B)^-(1+eps)) + 1, computed on the bracket's upper end.
    double log_mu = log_rat(rec.mu_ball.upper);
    double h = std::exp(-(1.0 + params.eps) * log_mu);
    std::uint64_t horizon = h >= static_cast<double>(params.horizon_cap)
                                ? params.horizon_cap
                                : static_cast<std::uint64_t>(h) + 1;
    if (horizon > x.usable_length()) {
      horizon = x.usable_length();
      rec.truncated = true;
    }
    rec.horizon = horizon;
    rec.tau = first_ball_hit(x, y, rec.r, 0, horizon);
    if (rec.tau && *rec.tau >= 1 && sgn(rec.mu_ball.lower) > 0) {
      double mid = rec.mu_ball.mid();
      rec.ratio = std::log(static_cast<double>(*rec.tau)) / -std::log(mid);
      rec.ratio_defined = true;
      rec.bracket_rel_width = rat_to_double(rec.mu_ball.width()) / mid;
    }
    out.push_back(rec);
  }
  return out;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  double pos = p * static_cast<double>(values.size() - 1);
  std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= values.size()) return values.back();
  double frac = pos - static_cast<double>(i);
  return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

SweepResult sweep_hitting(SystemPtr sys, int num_pairs, const ProfileParams& params,
                          std::uint64_t seed, int jobs) {
  if (num_pairs < 1) throw ValidationError("need at least one pair");
  // Digit budget: the largest schedule horizon at the smallest ball,
  // mu ~ c * 2^-k(dim-ish); derived from a probe ball at k_max.
  SweepResult res;
  res.records.resize(static_cast<std::size_t>(num_pairs));

  // Probe to size the budget: horizon scales like mu^-(1+eps).
  std::uint64_t budget = params.horizon_cap;
  {
    SymbolicPoint probe = sample_point(sys, 64, seed, 1);
    std::vector<Rat> yc;
    for (int axis = 0; axis < sys->dim(); ++axis) yc.push_back(probe.coordinate(axis));
    Rat r(Int(1), Int(1) << params.k_max);
    r.canonicalize();
    MeasureInterval m = ball_measure(*sys, yc, r, params.k_max + params.depth_guard);
    if (sgn(m.lower) > 0) {
      double h = std::exp(-(1.0 + params.eps) * log_rat(m.lower));
      if (h < static_cast<double>(params.horizon_cap)) budget = static_cast<std::uint64_t>(h) + 2;
    }
  }
  std::size_t length = static_cast<std::size_t>(budget) + params.k_max + 80;

  parallel_for(static_cast<std::size_t>(num_pairs), jobs, [&](std::size_t pair) {
    SymbolicPoint x = sample_point(sys, length, seed, 2 * pair);
    SymbolicPoint ypt = sample_point(sys, 64, seed, 2 * pair + 1);
    std::vector<Rat> y;
    for (int axis = 0; axis < sys->dim(); ++axis) y.push_back(ypt.coordinate(axis));
    res.records[pair] = hitting_ratio_profile(x, y, params);
  });

  for (int k = params.k_min; k <= params.k_max; ++k) {
    SweepRow row;
    row.k = k;
    row.pairs = num_pairs;
    std::vector<double> ratios;
    for (const auto& recs : res.records) {
      for (const auto& rec : recs) {
        if (rec.k != k) continue;
        if (rec.truncated) ++row.truncated;
        if (rec.ratio_defined) ratios.push_back(rec.ratio);
      }
    }
    row.defined = static_cast<int>(ratios.size());
    row.q25 = quantile(ratios, 0.25);
    row.median = quantile(ratios, 0.5);
    row.q75 = quantile(ratios, 0.75);
    res.rows.push_back(row);
  }
  return res;
}

}  // namespace ergolab
