#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ergolab/cells.hpp"
#include "ergolab/point.hpp"
#include "ergolab/radii.hpp"
#include "ergolab/rational.hpp"

namespace ergolab {

// Exact sign of (coordinate of T^n(x) on the axis) - q. The orbit point
// is the finite digit prefix, so the comparison always terminates.
int cmp_orbit_coord(const SymbolicPoint& x, std::uint64_t n, int axis, const Rat& q);

// Exact closed-ball membership ||T^n(x) - y||_inf <= r on the torus.
bool orbit_point_in_ball(const SymbolicPoint& x, std::uint64_t n, const std::vector<Rat>& y,
                         const Rat& r);

// Sliding integer window over one axis of an orbit: at step n it holds
// the first W digits of T^n(x) on that axis as an integer w, so the
// coordinate lies in [w/D, (w+1)/D) with D = base^W. Digits beyond the
// stored prefix read as zero, matching the point's exact value.
class AxisWindow {
 public:
  AxisWindow(const SymbolicPoint& x, int axis);

  void reset(std::uint64_t n);
  void advance();

  std::uint64_t value() const { return w_; }
  std::uint64_t scale() const { return D_; }
  int width() const { return W_; }
  std::uint64_t step() const { return n_; }

  // Leading g digits as an integer (g <= W).
  std::uint64_t prefix(int g) const { return w_ / prefix_div_[g]; }

 private:
  const std::vector<std::uint8_t>* digits_;
  std::vector<std::int8_t> digit_of_symbol_;
  std::size_t offset_ = 0;
  int base_ = 2;
  int W_ = 1;
  std::uint64_t D_ = 2;
  std::uint64_t top_ = 1;  // base^(W-1)
  std::uint64_t w_ = 0;
  std::uint64_t n_ = 0;
  std::vector<std::uint64_t> prefix_div_;
};

// Per-axis windows of one orbit, shared by every tester scanning it.
struct OrbitWindows {
  explicit OrbitWindows(const SymbolicPoint& x);
  void reset(std::uint64_t n);
  void advance();
  std::vector<AxisWindow> axes;
};

// floor(r * D) per axis; the integer radius bound used by window tests.
struct ScaledRadius {
  std::uint64_t floor_rD[2] = {0, 0};
  bool covers_axis[2] = {false, false};  // 2r >= 1
};

ScaledRadius scale_radius(const OrbitWindows& w, std::int64_t r_num, std::int64_t r_den);

// Fixed-target closed-ball membership against a shared orbit window.
// Window arithmetic decides all but a ~1/D fraction of steps; the rest
// fall back to exact digit comparisons.
class BallTester {
 public:
  BallTester(const SymbolicPoint& x, const OrbitWindows& windows, std::vector<Rat> center);

  bool test(std::uint64_t n, const ScaledRadius& sr, std::int64_t r_num, std::int64_t r_den);
  bool test_rat(std::uint64_t n, const Rat& r);

  std::uint64_t fallbacks() const { return fallbacks_; }

 private:
  const SymbolicPoint* x_;
  const OrbitWindows* windows_;
  std::vector<Rat> center_;
  std::vector<std::uint64_t> center_scaled_;  // floor(c * D)
  std::vector<bool> center_exact_;            // c * D integral
  std::uint64_t fallbacks_ = 0;
};

// First n in [n0, horizon] with T^n(x) in the closed ball B(y, r).
std::optional<std::uint64_t> first_ball_hit(const SymbolicPoint& x, const std::vector<Rat>& y,
                                            const Rat& r, std::uint64_t n0,
                                            std::uint64_t horizon);

struct HitScan {
  std::vector<std::uint64_t> hits;
  bool truncated = false;  // horizon exceeded the stored digits
};

// All n in [1, horizon] with T^n(x) in B(y, r_n); stops after max_hits.
HitScan scan_ball_hits(const SymbolicPoint& x, const std::vector<Rat>& y,
                       const RadiusSequence& radii, std::uint64_t horizon,
                       std::size_t max_hits = SIZE_MAX);

struct TargetHits {
  std::vector<std::uint64_t> hit_count;       // per target
  std::vector<std::uint64_t> first_tail_hit;  // first hit with n >= tail_start (0 = none)
};

// Moving-ball scan: one pass over the orbit testing every target y_j for
// ||T^n(x) - y_j||_inf <= r_n, n in [1, horizon].
TargetHits scan_targets(const SymbolicPoint& x, const std::vector<std::vector<Rat>>& targets,
                        const RadiusSequence& radii, std::uint64_t horizon,
                        std::uint64_t tail_start);

// First k hits of the orbit in a cell union (n >= 1), exact via digit
// prefixes; stops at the horizon with a truncation flag.
struct InducedOrbit {
  std::vector<std::uint64_t> hit_times;  // n_A^1 < n_A^2 < ...
  bool truncated = false;
};

InducedOrbit induced_orbit(const SymbolicPoint& x, const CellUnion& a, std::size_t count,
                           std::uint64_t horizon);

}  // namespace ergolab
