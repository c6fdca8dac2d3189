#ifndef MODCOL_BIGFLOAT_HPP
#define MODCOL_BIGFLOAT_HPP

#include "modcol/rational.hpp"

#include <mpfr.h>

#include <string>
#include <utility>

namespace modcol {

// Thin RAII wrapper over mpfr_t. Every value carries its own working
// precision in bits; binary operations round to the smaller of the two
// operand precisions (precision never silently inflates).
class BigFloat {
public:
  BigFloat() { mpfr_init2(x_, 64); mpfr_set_zero(x_, 1); }
  explicit BigFloat(long prec_bits) { mpfr_init2(x_, clamp(prec_bits)); mpfr_set_zero(x_, 1); }
  BigFloat(long value, long prec_bits) { mpfr_init2(x_, clamp(prec_bits)); mpfr_set_si(x_, value, MPFR_RNDN); }
  BigFloat(const Rational& value, long prec_bits) {
    mpfr_init2(x_, clamp(prec_bits));
    mpfr_set_q(x_, value.get_mpq_t(), MPFR_RNDN);
  }
  BigFloat(const Integer& value, long prec_bits) {
    mpfr_init2(x_, clamp(prec_bits));
    mpfr_set_z(x_, value.get_mpz_t(), MPFR_RNDN);
  }
  BigFloat(const std::string& decimal, long prec_bits) {
    mpfr_init2(x_, clamp(prec_bits));
    mpfr_set_str(x_, decimal.c_str(), 10, MPFR_RNDN);
  }

  BigFloat(const BigFloat& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept { mpfr_init2(x_, 64); mpfr_swap(x_, o.x_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) { mpfr_set_prec(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept { mpfr_swap(x_, o.x_); return *this; }
  ~BigFloat() { mpfr_clear(x_); }

  long prec_bits() const { return mpfr_get_prec(x_); }
  bool is_zero() const { return mpfr_zero_p(x_); }
  int sign() const { return mpfr_sgn(x_); }
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
  long exponent() const { return is_zero() ? MPFR_EMIN_DEFAULT : mpfr_get_exp(x_); }

  const mpfr_t& raw() const { return x_; }
  mpfr_t& raw() { return x_; }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b)); mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN); return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b)); mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN); return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b)); mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN); return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b)); mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN); return r;
  }
  BigFloat operator-() const { BigFloat r(prec_bits()); mpfr_neg(r.x_, x_, MPFR_RNDN); return r; }

  BigFloat& operator+=(const BigFloat& o) { *this = *this + o; return *this; }
  BigFloat& operator-=(const BigFloat& o) { *this = *this - o; return *this; }
  BigFloat& operator*=(const BigFloat& o) { *this = *this * o; return *this; }
  BigFloat& operator/=(const BigFloat& o) { *this = *this / o; return *this; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }

  BigFloat abs() const { BigFloat r(prec_bits()); mpfr_abs(r.x_, x_, MPFR_RNDN); return r; }
  BigFloat floor() const { BigFloat r(prec_bits()); mpfr_floor(r.x_, x_); return r; }
  // the same value carried at a different working precision
  BigFloat with_prec(long p) const {
    BigFloat r(p); mpfr_set(r.x_, x_, MPFR_RNDN); return r;
  }
  BigFloat sqrt() const { BigFloat r(prec_bits()); mpfr_sqrt(r.x_, x_, MPFR_RNDN); return r; }
  BigFloat exp() const { BigFloat r(prec_bits()); mpfr_exp(r.x_, x_, MPFR_RNDN); return r; }
  BigFloat log() const { BigFloat r(prec_bits()); mpfr_log(r.x_, x_, MPFR_RNDN); return r; }
  BigFloat cos() const { BigFloat r(prec_bits()); mpfr_cos(r.x_, x_, MPFR_RNDN); return r; }
  BigFloat sin() const { BigFloat r(prec_bits()); mpfr_sin(r.x_, x_, MPFR_RNDN); return r; }
  BigFloat pow_si(long e) const { BigFloat r(prec_bits()); mpfr_pow_si(r.x_, x_, e, MPFR_RNDN); return r; }
  // *this * 2^e, exact.
  BigFloat mul_2exp(long e) const { BigFloat r(prec_bits()); mpfr_mul_2si(r.x_, x_, e, MPFR_RNDN); return r; }

  Integer round_to_integer() const {
    BigFloat t(prec_bits());
    mpfr_rint(t.x_, x_, MPFR_RNDN);
    Integer z;
    mpfr_get_z(z.get_mpz_t(), t.x_, MPFR_RNDN);
    return z;
  }

  static BigFloat pi(long prec_bits) {
    BigFloat r(prec_bits); mpfr_const_pi(r.x_, MPFR_RNDN); return r;
  }

  std::string to_string(size_t digits = 0) const;

private:
  static long clamp(long p) { return p < 2 ? 2 : p; }
  static long join(const BigFloat& a, const BigFloat& b) {
    return std::min(a.prec_bits(), b.prec_bits());
  }
  mpfr_t x_;
};

} // namespace modcol

#endif
