#include "ergolab/radii.hpp"

#include <cmath>

namespace ergolab {

RadiusSequence RadiusSequence::power_law(const Rat& coeff, double delta) {
  RadiusSequence r;
  r.kind_ = Kind::kPowerLaw;
  r.coeff_ = coeff;
  r.delta_ = delta;
  double rounded = std::round(delta);
  r.delta_is_int_ = std::abs(delta - rounded) < 1e-12 && rounded >= 0;
  r.delta_int_ = static_cast<int>(rounded);
  r.exact_ = r.delta_is_int_;
  r.monotone_ = delta >= 0 && sgn(coeff) >= 0;
  if (!r.monotone_) throw ValidationError("power-law radii must be nonincreasing");
  return r;
}

RadiusSequence RadiusSequence::power_law_exact(const Rat& coeff, int delta) {
  return power_law(coeff, static_cast<double>(delta));
}

RadiusSequence RadiusSequence::constant(const Rat& value) {
  RadiusSequence r;
  r.kind_ = Kind::kConstant;
  r.coeff_ = value;
  r.exact_ = true;
  r.monotone_ = true;
  return r;
}

RadiusSequence RadiusSequence::explicit_list(std::vector<Rat> values) {
  RadiusSequence r;
  r.kind_ = Kind::kExplicit;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i] < values[i + 1]) throw ValidationError("explicit radii must be nonincreasing");
  for (const Rat& v : values)
    if (sgn(v) < 0) throw ValidationError("radii must be nonnegative");
  r.values_ = std::move(values);
  r.exact_ = true;
  r.monotone_ = true;
  return r;
}

RadiusSequence RadiusSequence::generator(std::function<double(double)> log_r_of_log_n) {
  RadiusSequence r;
  r.kind_ = Kind::kGenerator;
  r.exact_ = false;
  r.log_gen_ = std::move(log_r_of_log_n);
  // Spot-check monotonicity over doubling indices; a generator cannot be
  // certified, only screened.
  r.monotone_ = true;
  double prev = r.log_gen_(0.0);
  for (int k = 1; k <= 40; ++k) {
    double cur = r.log_gen_(k * 0.5);
    if (cur > prev + 1e-9) r.monotone_ = false;
    prev = cur;
  }
  return r;
}

Rat RadiusSequence::value(std::uint64_t n) const {
  if (n == 0) throw ValidationError("radius index starts at 1");
  switch (kind_) {
    case Kind::kConstant:
      return coeff_;
    case Kind::kPowerLaw: {
      if (!exact_) throw ValidationError("non-integer exponent has no exact rational values");
      Int den;
      mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(n),
                    static_cast<unsigned long>(delta_int_));
      Rat out = coeff_ / Rat(den);
      return out;
    }
    case Kind::kExplicit:
      if (n > values_.size()) throw BudgetError("explicit radius list exhausted");
      return values_[n - 1];
    case Kind::kGenerator:
      throw ValidationError("generator radii are log-domain only");
  }
  throw ValidationError("unknown radius kind");
}

double RadiusSequence::log_value(double log_n) const {
  switch (kind_) {
    case Kind::kConstant:
      return log_rat(coeff_);
    case Kind::kPowerLaw:
      return log_rat(coeff_) - delta_ * log_n;
    case Kind::kExplicit: {
      auto n = static_cast<std::size_t>(std::llround(std::exp(log_n)));
      if (n < 1) n = 1;
      if (n > values_.size()) throw BudgetError("explicit radius list exhausted");
      if (sgn(values_[n - 1]) == 0) return -1e300;
      return log_rat(values_[n - 1]);
    }
    case Kind::kGenerator:
      return log_gen_(log_n);
  }
  throw ValidationError("unknown radius kind");
}

std::optional<std::pair<std::int64_t, std::int64_t>> RadiusSequence::value_i64(
    std::uint64_t n) const {
  if (!exact_) return std::nullopt;
  Rat v = value(n);
  if (!v.get_num().fits_slong_p() || !v.get_den().fits_slong_p()) return std::nullopt;
  return std::make_pair(static_cast<std::int64_t>(v.get_num().get_si()),
                        static_cast<std::int64_t>(v.get_den().get_si()));
}

namespace {

// Condensation slope: least-squares slope of t_k = k log 2 + s log r_{2^k}
// over the top half of the k-range. Positive slope <=> sum 2^k r_{2^k}^s
// has non-decaying terms <=> divergence.
double condensation_slope(const RadiusSequence& radii, double s, double k_max) {
  constexpr double ln2 = 0.6931471805599453;
  const int points = 9;
  double xs = 0, ys = 0, xx = 0, xy = 0;
  for (int i = 0; i < points; ++i) {
    double k = k_max / 2.0 + (k_max / 2.0) * i / (points - 1);
    double t = k * ln2 + s * radii.log_value(k * ln2);
    xs += k;
    ys += t;
    xx += k * k;
    xy += k * t;
  }
  double denom = points * xx - xs * xs;
  return (points * xy - xs * ys) / denom;
}

}  // namespace

ExponentBracket critical_exponent(const RadiusSequence& radii, double tolerance) {
  if (tolerance <= 0) throw ValidationError("tolerance must be positive");
  if (!radii.monotone_certified()) throw ValidationError("radii must be nonincreasing");

  if (radii.kind() == RadiusSequence::Kind::kPowerLaw) {
    if (sgn(radii.coeff()) == 0) return {0.0, 0.0, true};
    if (radii.delta() <= 0) return {1e300, 1e300, true};
    double s = 1.0 / radii.delta();
    return {s, s, true};
  }
  if (radii.kind() == RadiusSequence::Kind::kConstant) {
    if (sgn(radii.coeff()) == 0) return {0.0, 0.0, true};
    return {1e300, 1e300, true};
  }

  double k_max = 65536.0;
  if (radii.kind() == RadiusSequence::Kind::kExplicit) {
    bool all_zero = true;
    for (std::size_t n = 1; n <= radii.explicit_size(); ++n)
      if (sgn(radii.value(n)) != 0) all_zero = false;
    if (all_zero || radii.explicit_size() == 0) return {0.0, 0.0, true};
    k_max = std::log2(static_cast<double>(radii.explicit_size()));
    if (k_max < 4) throw ValidationError("explicit list too short for a slope test");
  }

  auto diverges = [&](double s) { return condensation_slope(radii, s, k_max) > 0.0; };

  if (!diverges(0.0)) return {0.0, 0.0, false};
  double lo = 0.0, hi = 1.0;
  while (diverges(hi)) {
    hi *= 2.0;
    if (hi > 1e6) return {hi, 1e300, false};  // radii decay too slowly to bracket
  }
  while (hi - lo > tolerance) {
    double mid = 0.5 * (lo + hi);
    if (diverges(mid)) lo = mid;
    else hi = mid;
  }
  return {lo, hi, false};
}

}  // namespace ergolab
