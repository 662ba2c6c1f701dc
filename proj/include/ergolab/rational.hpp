#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ergolab {

using Rat = mpq_class;
using Int = mpz_class;

// Parse "a/b" or "a" (also accepts a plain decimal integer). Throws on
// malformed input or zero denominator.
Rat parse_rational(const std::string& text);

// Canonical serialization: "a" when the denominator is 1, else "a/b".
std::string rat_str(const Rat& q);

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);

// floor(q * base^g) without materializing the power as a rational.
Int floor_scaled(const Rat& q, const Int& scale);

// Natural log of a positive rational, accurate to ~1 ulp of double.
double log_rat(const Rat& q);

double rat_to_double(const Rat& q);

Int pow_int(unsigned base, unsigned exp);

inline Rat make_rat(long num, long den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ergolab
