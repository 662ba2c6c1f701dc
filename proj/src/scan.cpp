#include "ergolab/scan.hpp"

#include <algorithm>
#include <cmath>

namespace ergolab {

namespace {

std::uint64_t floor_mul_div(std::uint64_t num, std::uint64_t scale, std::uint64_t den) {
  unsigned __int128 prod = static_cast<unsigned __int128>(num) * scale;
  return static_cast<std::uint64_t>(prod / den);
}

}  // namespace

int cmp_orbit_coord(const SymbolicPoint& x, std::uint64_t n, int axis, const Rat& q) {
  if (sgn(q) < 0) return 1;
  if (q >= 1) return -1;
  int base = x.system().base(axis);
  Int num = q.get_num();
  const Int& den = q.get_den();
  std::size_t remaining = x.usable_length() > n ? x.usable_length() - n : 0;
  for (std::size_t t = 1;; ++t) {
    if (sgn(num) == 0) {
      // q's expansion terminated: equality iff all further digits of x are 0.
      for (std::size_t s = t; s <= remaining; ++s)
        if (x.digit_at(axis, n + s) != 0) return 1;
      return 0;
    }
    if (t > remaining) return -1;  // x's tail is zero while q still has mass
    int xd = x.digit_at(axis, n + t);
    num *= base;
    Int qd_z;
    mpz_fdiv_q(qd_z.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    long qd = qd_z.get_si();
    if (xd != qd) return xd < qd ? 1 : -1;
    num -= qd_z * den;
  }
}

bool orbit_point_in_ball(const SymbolicPoint& x, std::uint64_t n, const std::vector<Rat>& y,
                         const Rat& r) {
  if (2 * r >= 1) return true;
  for (int axis = 0; axis < x.system().dim(); ++axis) {
    Rat c = y[axis];
    c -= Rat(floor_rat(c));
    Rat lo = c - r, hi = c + r;
    bool inside;
    if (sgn(lo) < 0) {
      inside = cmp_orbit_coord(x, n, axis, hi) <= 0 || cmp_orbit_coord(x, n, axis, lo + 1) >= 0;
    } else if (hi > 1) {
      inside = cmp_orbit_coord(x, n, axis, lo) >= 0 || cmp_orbit_coord(x, n, axis, hi - 1) <= 0;
    } else {
      inside = cmp_orbit_coord(x, n, axis, lo) >= 0 && cmp_orbit_coord(x, n, axis, hi) <= 0;
    }
    if (!inside) return false;
  }
  return true;
}

AxisWindow::AxisWindow(const SymbolicPoint& x, int axis)
    : digits_(&x.raw_digits()), offset_(x.offset()), base_(x.system().base(axis)) {
  const auto& sys = x.system();
  digit_of_symbol_.resize(sys.alphabet_size());
  for (std::size_t s = 0; s < sys.alphabet_size(); ++s)
    digit_of_symbol_[s] = static_cast<std::int8_t>(sys.digit(s, axis));
  W_ = 1;
  std::uint64_t d = static_cast<std::uint64_t>(base_);
  while (d < (1ULL << 62) / static_cast<std::uint64_t>(base_)) {
    d *= static_cast<std::uint64_t>(base_);
    ++W_;
  }
  D_ = d;
  top_ = D_ / static_cast<std::uint64_t>(base_);
  prefix_div_.assign(static_cast<std::size_t>(W_) + 1, 1);
  for (int g = W_ - 1; g >= 0; --g) prefix_div_[g] = prefix_div_[g + 1] * base_;
  reset(0);
}

void AxisWindow::reset(std::uint64_t n) {
  n_ = n;
  w_ = 0;
  for (int t = 1; t <= W_; ++t) {
    std::size_t idx = offset_ + n + static_cast<std::size_t>(t) - 1;
    int d = idx < digits_->size() ? digit_of_symbol_[(*digits_)[idx]] : 0;
    w_ = w_ * static_cast<std::uint64_t>(base_) + static_cast<std::uint64_t>(d);
  }
}

void AxisWindow::advance() {
  ++n_;
  std::size_t idx = offset_ + n_ + static_cast<std::size_t>(W_) - 1;
  int d = idx < digits_->size() ? digit_of_symbol_[(*digits_)[idx]] : 0;
  w_ = (w_ % top_) * static_cast<std::uint64_t>(base_) + static_cast<std::uint64_t>(d);
}

OrbitWindows::OrbitWindows(const SymbolicPoint& x) {
  for (int axis = 0; axis < x.system().dim(); ++axis) axes.emplace_back(x, axis);
}

void OrbitWindows::reset(std::uint64_t n) {
  for (auto& w : axes) w.reset(n);
}

void OrbitWindows::advance() {
  for (auto& w : axes) w.advance();
}

ScaledRadius scale_radius(const OrbitWindows& w, std::int64_t r_num, std::int64_t r_den) {
  ScaledRadius out;
  bool covers = 2 * static_cast<unsigned __int128>(r_num) >=
                static_cast<unsigned __int128>(r_den);
  for (std::size_t axis = 0; axis < w.axes.size(); ++axis) {
    out.covers_axis[axis] = covers;
    out.floor_rD[axis] = floor_mul_div(static_cast<std::uint64_t>(r_num),
                                       w.axes[axis].scale(),
                                       static_cast<std::uint64_t>(r_den));
  }
  return out;
}

BallTester::BallTester(const SymbolicPoint& x, const OrbitWindows& windows,
                       std::vector<Rat> center)
    : x_(&x), windows_(&windows), center_(std::move(center)) {
  if (static_cast<int>(center_.size()) != x.system().dim())
    throw ValidationError("target dimension does not match the system");
  for (int axis = 0; axis < x.system().dim(); ++axis) {
    Rat c = center_[axis];
    c -= Rat(floor_rat(c));
    center_[axis] = c;
    Int d_int(static_cast<unsigned long>(windows.axes[axis].scale()));
    Int scaled = floor_scaled(c, d_int);
    center_scaled_.push_back(mpz_get_ui(scaled.get_mpz_t()));
    Rat back(scaled, d_int);
    back.canonicalize();
    center_exact_.push_back(back == c);
  }
}

bool BallTester::test(std::uint64_t n, const ScaledRadius& sr, std::int64_t r_num,
                      std::int64_t r_den) {
  bool border = false;
  for (std::size_t axis = 0; axis < windows_->axes.size(); ++axis) {
    if (sr.covers_axis[axis]) continue;
    const AxisWindow& win = windows_->axes[axis];
    std::uint64_t D = win.scale();
    std::uint64_t F = sr.floor_rD[axis];
    std::uint64_t w = win.value();
    std::uint64_t Y = center_scaled_[axis];
    std::uint64_t delta = w >= Y ? w - Y : D - (Y - w);
    std::uint64_t u = std::min(delta, D - 1 - delta);
    if (u + 1 <= F) continue;  // axis certainly within r
    std::uint64_t out_from = center_exact_[axis] ? F + 1 : F + 2;
    if (u >= out_from) return false;
    border = true;
  }
  if (!border) return true;
  ++fallbacks_;
  Rat r(r_num, r_den);
  r.canonicalize();
  return orbit_point_in_ball(*x_, n, center_, r);
}

bool BallTester::test_rat(std::uint64_t n, const Rat& r) {
  if (r.get_num().fits_slong_p() && r.get_den().fits_slong_p()) {
    std::int64_t rn = r.get_num().get_si();
    std::int64_t rd = r.get_den().get_si();
    ScaledRadius sr = scale_radius(*windows_, rn, rd);
    return test(n, sr, rn, rd);
  }
  ++fallbacks_;
  return orbit_point_in_ball(*x_, n, center_, r);
}

std::optional<std::uint64_t> first_ball_hit(const SymbolicPoint& x, const std::vector<Rat>& y,
                                            const Rat& r, std::uint64_t n0,
                                            std::uint64_t horizon) {
  if (sgn(r) <= 0) throw ValidationError("ball radius must be positive");
  OrbitWindows windows(x);
  windows.reset(n0);
  BallTester tester(x, windows, y);
  bool fast = r.get_num().fits_slong_p() && r.get_den().fits_slong_p();
  std::int64_t rn = fast ? r.get_num().get_si() : 0;
  std::int64_t rd = fast ? r.get_den().get_si() : 1;
  ScaledRadius sr;
  if (fast) sr = scale_radius(windows, rn, rd);
  for (std::uint64_t n = n0; n <= horizon; ++n) {
    bool hit = fast ? tester.test(n, sr, rn, rd) : tester.test_rat(n, r);
    if (hit) return n;
    windows.advance();
  }
  return std::nullopt;
}

HitScan scan_ball_hits(const SymbolicPoint& x, const std::vector<Rat>& y,
                       const RadiusSequence& radii, std::uint64_t horizon,
                       std::size_t max_hits) {
  HitScan out;
  if (horizon > x.usable_length()) {
    out.truncated = true;
    horizon = x.usable_length();
  }
  OrbitWindows windows(x);
  windows.reset(1);
  BallTester tester(x, windows, y);
  for (std::uint64_t n = 1; n <= horizon && out.hits.size() < max_hits; ++n) {
    auto fast = radii.value_i64(n);
    bool hit;
    if (fast) {
      ScaledRadius sr = scale_radius(windows, fast->first, fast->second);
      hit = tester.test(n, sr, fast->first, fast->second);
    } else {
      hit = tester.test_rat(n, radii.value(n));
    }
    if (hit) out.hits.push_back(n);
    windows.advance();
  }
  return out;
}

TargetHits scan_targets(const SymbolicPoint& x, const std::vector<std::vector<Rat>>& targets,
                        const RadiusSequence& radii, std::uint64_t horizon,
                        std::uint64_t tail_start) {
  TargetHits out;
  out.hit_count.assign(targets.size(), 0);
  out.first_tail_hit.assign(targets.size(), 0);
  if (horizon > x.usable_length()) horizon = x.usable_length();

  OrbitWindows windows(x);
  windows.reset(1);
  std::vector<BallTester> testers;
  testers.reserve(targets.size());
  for (const auto& y : targets) testers.emplace_back(x, windows, y);

  for (std::uint64_t n = 1; n <= horizon; ++n) {
    auto fast = radii.value_i64(n);
    ScaledRadius sr;
    Rat r_exact;
    if (fast) {
      sr = scale_radius(windows, fast->first, fast->second);
    } else {
      r_exact = radii.value(n);
    }
    for (std::size_t j = 0; j < targets.size(); ++j) {
      bool hit = fast ? testers[j].test(n, sr, fast->first, fast->second)
                      : testers[j].test_rat(n, r_exact);
      if (hit) {
        ++out.hit_count[j];
        if (n >= tail_start && out.first_tail_hit[j] == 0) out.first_tail_hit[j] = n;
      }
    }
    windows.advance();
  }
  return out;
}

InducedOrbit induced_orbit(const SymbolicPoint& x, const CellUnion& a, std::size_t count,
                           std::uint64_t horizon) {
  if (a.empty()) throw ValidationError("induced orbit needs a nonempty target set");
  InducedOrbit out;
  std::size_t gen = static_cast<std::size_t>(std::max(a.gen_x(), a.gen_y()));
  std::uint64_t max_n = x.usable_length() > gen ? x.usable_length() - gen : 0;
  if (horizon > max_n) {
    out.truncated = true;
    horizon = max_n;
  }
  OrbitWindows windows(x);
  windows.reset(1);
  for (std::uint64_t n = 1; n <= horizon && out.hit_times.size() < count; ++n) {
    std::uint64_t ix = windows.axes[0].prefix(a.gen_x());
    std::uint64_t iy = windows.axes.size() > 1 ? windows.axes[1].prefix(a.gen_y()) : 0;
    if (a.contains_indices(ix, iy)) out.hit_times.push_back(n);
    windows.advance();
  }
  if (out.hit_times.size() < count) out.truncated = true;
  return out;
}

}  // namespace ergolab
