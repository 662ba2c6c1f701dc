#include "ergolab/point.hpp"

#include <algorithm>

#include "ergolab/rng.hpp"

namespace ergolab {

SymbolicPoint::SymbolicPoint(SystemPtr system, std::vector<std::uint8_t> digits,
                             std::size_t offset)
    : system_(std::move(system)),
      digits_(std::make_shared<const std::vector<std::uint8_t>>(std::move(digits))),
      offset_(offset) {
  for (std::uint8_t s : *digits_)
    if (s >= system_->alphabet_size()) throw ValidationError("digit index outside alphabet");
  if (offset_ > digits_->size()) throw ValidationError("offset exceeds stored digits");
}

SymbolicPoint SymbolicPoint::shifted(std::size_t k) const {
  if (k > usable_length()) throw BudgetError("shift exhausts the stored digit prefix");
  SymbolicPoint out = *this;
  out.offset_ += k;
  return out;
}

Rat SymbolicPoint::coordinate(int axis, std::size_t max_digits) const {
  std::size_t len = std::min(max_digits, usable_length());
  if (len == 0) return Rat(0);
  int base = system_->base(axis);
  // Horner over the digit prefix: num = sum d_t b^(len-t), value = num / b^len.
  Int num(0);
  for (std::size_t t = 1; t <= len; ++t) num = num * base + digit_at(axis, t);
  Rat out(num, pow_int(static_cast<unsigned>(base), static_cast<unsigned>(len)));
  out.canonicalize();
  return out;
}

Rat SymbolicPoint::truncation_error(int axis, std::size_t max_digits) const {
  std::size_t len = std::min(max_digits, usable_length());
  int base = system_->base(axis);
  Rat out(1, pow_int(static_cast<unsigned>(base), static_cast<unsigned>(len)));
  out.canonicalize();
  return out;
}

Word SymbolicPoint::prefix_word(std::size_t len) const {
  if (len > usable_length()) throw BudgetError("word longer than stored digits");
  Word w(len);
  for (std::size_t t = 0; t < len; ++t) w[t] = (*digits_)[offset_ + t];
  return w;
}

EmbeddedPoint embed(const SymbolicPoint& p, std::size_t max_digits) {
  EmbeddedPoint out;
  for (int axis = 0; axis < p.system().dim(); ++axis) {
    out.coords.push_back(p.coordinate(axis, max_digits));
    out.error_bound.push_back(p.truncation_error(axis, max_digits));
  }
  return out;
}

SymbolicPoint sample_point(SystemPtr system, std::size_t length, std::uint64_t seed,
                           std::uint64_t stream) {
  if (length == 0) throw ValidationError("sample length must be >= 1");
  const auto& thresholds = system->sampling_thresholds();
  CounterRng rng(seed, stream);
  std::vector<std::uint8_t> digits(length);
  for (std::size_t t = 0; t < length; ++t) {
    std::uint64_t u = rng.next();
    std::size_t k = 0;
    while (u > thresholds[k] || sgn(system->prob(k)) == 0) ++k;
    digits[t] = static_cast<std::uint8_t>(k);
  }
  return SymbolicPoint(std::move(system), std::move(digits));
}

SymbolicPoint point_from_digits(SystemPtr system, const std::vector<int>& xs,
                                const std::vector<int>& ys) {
  std::vector<std::uint8_t> digits;
  if (system->dim() == 1) {
    for (int i : xs) {
      int idx = system->symbol_index(i, 0);
      if (idx < 0) throw ValidationError("digit not in alphabet");
      digits.push_back(static_cast<std::uint8_t>(idx));
    }
  } else {
    if (xs.size() != ys.size()) throw ValidationError("per-axis digit lists differ in length");
    for (std::size_t t = 0; t < xs.size(); ++t) {
      int idx = system->symbol_index(xs[t], ys[t]);
      if (idx < 0) throw ValidationError("digit pair not in alphabet");
      digits.push_back(static_cast<std::uint8_t>(idx));
    }
  }
  return SymbolicPoint(std::move(system), std::move(digits));
}

}  // namespace ergolab
