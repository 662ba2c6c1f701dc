#include "ergolab/rational.hpp"

#include <cmath>

namespace ergolab {

Rat parse_rational(const std::string& text) {
  if (text.empty()) throw ValidationError("empty rational literal");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw ValidationError("malformed rational literal: " + text);
  }
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw ValidationError("malformed rational literal: " + text);
  if (q.get_den() == 0) throw ValidationError("zero denominator: " + text);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

Int floor_rat(const Rat& q) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

Int ceil_rat(const Rat& q) {
  Int out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

Int floor_scaled(const Rat& q, const Int& scale) {
  Int num = q.get_num() * scale;
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

double log_rat(const Rat& q) {
  if (sgn(q) <= 0) throw std::domain_error("log of non-positive rational");
  signed long num_exp = 0, den_exp = 0;
  double num_d = mpz_get_d_2exp(&num_exp, q.get_num().get_mpz_t());
  double den_d = mpz_get_d_2exp(&den_exp, q.get_den().get_mpz_t());
  constexpr double ln2 = 0.6931471805599453;
  return std::log(num_d) - std::log(den_d) + ln2 * static_cast<double>(num_exp - den_exp);
}

double rat_to_double(const Rat& q) { return q.get_d(); }

Int pow_int(unsigned base, unsigned exp) {
  Int out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

}  // namespace ergolab
