#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ergolab/measure.hpp"
#include "ergolab/point.hpp"
#include "ergolab/scan.hpp"

namespace ergolab {

// tau_r(x,y) = inf{n >= 0 : T^n(x) in B(y,r)}, scanned to the horizon.
std::optional<std::uint64_t> hitting_time(const SymbolicPoint& x, const std::vector<Rat>& y,
                                          const Rat& r, std::uint64_t horizon);

struct HittingRecord {
  int k = 0;                    // scale index, r = 2^-k
  Rat r{0};
  std::optional<std::uint64_t> tau;
  MeasureInterval mu_ball;      // bracket on mu(B(y, r))
  std::uint64_t horizon = 0;    // N_r schedule actually used
  bool truncated = false;       // horizon clipped by the digit budget
  bool ratio_defined = false;
  double ratio = 0.0;           // log tau / (-log mid(mu_ball))
  double bracket_rel_width = 0.0;
};

struct ProfileParams {
  int k_min = 12;
  int k_max = 16;
  double eps = 0.1;   // horizon schedule N_r = floor(mu_upper^-(1+eps)) + 1
  int depth_guard = 16;
  std::uint64_t horizon_cap = 1ULL << 26;
};

// One record per scale k: mu(B(y,2^-k)) bracket, the waiting-time horizon
// from the schedule, the hitting time and the log-ratio.
std::vector<HittingRecord> hitting_ratio_profile(const SymbolicPoint& x,
                                                 const std::vector<Rat>& y,
                                                 const ProfileParams& params);

struct SweepRow {
  int k = 0;
  int pairs = 0;
  int defined = 0;
  int truncated = 0;
  double q25 = 0.0, median = 0.0, q75 = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::vector<HittingRecord>> records;  // per pair
};

// Seeded (x,y) pairs, profile per pair, per-k ratio quantiles.
SweepResult sweep_hitting(SystemPtr sys, int num_pairs, const ProfileParams& params,
                          std::uint64_t seed, int jobs = 1);

double quantile(std::vector<double> values, double p);

}  // namespace ergolab
