#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ergolab/rational.hpp"

namespace ergolab {

// Non-increasing sequence of radii (r_n)_{n>=1}. Power laws with integer
// exponent and explicit lists carry exact rational values; generators are
// log-domain callables used by the critical-exponent machinery.
class RadiusSequence {
 public:
  enum class Kind { kPowerLaw, kExplicit, kGenerator, kConstant };

  // r_n = coeff * n^-delta. Values are exact when delta is an integer.
  static RadiusSequence power_law(const Rat& coeff, double delta);
  static RadiusSequence power_law_exact(const Rat& coeff, int delta);
  static RadiusSequence constant(const Rat& value);
  static RadiusSequence explicit_list(std::vector<Rat> values);
  // log r as a function of log n; defined for arbitrarily large arguments.
  static RadiusSequence generator(std::function<double(double)> log_r_of_log_n);

  Kind kind() const { return kind_; }
  bool exact() const { return exact_; }
  bool monotone_certified() const { return monotone_; }
  double delta() const { return delta_; }
  const Rat& coeff() const { return coeff_; }
  std::size_t explicit_size() const { return values_.size(); }

  // Exact rational r_n; throws when the sequence is not exactly valued.
  Rat value(std::uint64_t n) const;

  // log r_n from log n (power law/generator) or from the stored value.
  double log_value(double log_n) const;

  // Numerator/denominator of r_n when both fit in int64 (fast scan path).
  std::optional<std::pair<std::int64_t, std::int64_t>> value_i64(std::uint64_t n) const;

 private:
  Kind kind_ = Kind::kConstant;
  bool exact_ = true;
  bool monotone_ = true;
  double delta_ = 0.0;
  int delta_int_ = 0;
  bool delta_is_int_ = false;
  Rat coeff_{1};
  std::vector<Rat> values_;
  std::function<double(double)> log_gen_;
};

struct ExponentBracket {
  double lo = 0.0;
  double hi = 0.0;
  bool exact = false;  // closed form (power law) vs condensation bisection
};

// Critical exponent s_r = inf{s : sum r_n^s < inf}. Closed form 1/delta
// for power laws; otherwise bisection on a Cauchy-condensation slope test.
ExponentBracket critical_exponent(const RadiusSequence& radii, double tolerance);

}  // namespace ergolab
