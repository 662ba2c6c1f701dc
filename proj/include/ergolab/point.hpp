#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ergolab/rational.hpp"
#include "ergolab/system.hpp"

namespace ergolab {

// A point of the torus stored as a finite prefix of its digit expansion.
// The point's value is exactly the truncated sum (trailing digits zero),
// so every geometric query against it is decidable in rational arithmetic.
// Shifting advances an offset into the shared digit buffer; it never
// copies, so orbit iteration is O(1) per step.
class SymbolicPoint {
 public:
  SymbolicPoint(SystemPtr system, std::vector<std::uint8_t> digits, std::size_t offset = 0);

  const ExpandingToralSystem& system() const { return *system_; }
  SystemPtr system_ptr() const { return system_; }

  std::size_t stored_length() const { return digits_->size(); }
  std::size_t offset() const { return offset_; }
  std::size_t usable_length() const { return digits_->size() - offset_; }

  // Symbol index at position t (1-based) of the shifted expansion.
  std::uint8_t symbol_at(std::size_t t) const { return (*digits_)[offset_ + t - 1]; }

  // Per-axis digit at position t (1-based); 0 beyond the stored prefix.
  int digit_at(int axis, std::size_t t) const {
    if (offset_ + t > digits_->size()) return 0;
    return system_->digit((*digits_)[offset_ + t - 1], axis);
  }

  // T^k on digits. Throws when k exceeds the stored prefix.
  SymbolicPoint shifted(std::size_t k) const;

  // Exact coordinate on one axis: sum of digit_t * base^-t over at most
  // `max_digits` remaining digits (all of them by default).
  Rat coordinate(int axis, std::size_t max_digits = SIZE_MAX) const;

  // Truncation error bound base^-(#digits used) for the same prefix.
  Rat truncation_error(int axis, std::size_t max_digits = SIZE_MAX) const;

  // First `len` symbol indices starting at the current offset.
  Word prefix_word(std::size_t len) const;

  const std::vector<std::uint8_t>& raw_digits() const { return *digits_; }

 private:
  SystemPtr system_;
  std::shared_ptr<const std::vector<std::uint8_t>> digits_;
  std::size_t offset_ = 0;
};

struct EmbeddedPoint {
  std::vector<Rat> coords;      // one per axis, in [0,1)
  std::vector<Rat> error_bound; // per-axis truncation error base^-L
};

EmbeddedPoint embed(const SymbolicPoint& p, std::size_t max_digits = SIZE_MAX);

// i.i.d. digits from the system's probability vector, keyed by
// (seed, stream); identical keys give identical points.
SymbolicPoint sample_point(SystemPtr system, std::size_t length, std::uint64_t seed,
                           std::uint64_t stream = 0);

// Point from explicit per-axis digit vectors (digits validated against the
// alphabet; for dim 2 the digit pairs must all be alphabet entries).
SymbolicPoint point_from_digits(SystemPtr system, const std::vector<int>& xs,
                                const std::vector<int>& ys = {});

}  // namespace ergolab
