#ifndef MODCOL_BIGCOMPLEX_HPP
#define MODCOL_BIGCOMPLEX_HPP

#include "modcol/bigfloat.hpp"

namespace modcol {

// Arbitrary-precision complex number as an (re, im) pair of BigFloat.
// The working precision of a value is min(re.prec, im.prec); arithmetic
// results carry the min of the operand precisions.
class BigComplex {
public:
  static constexpr long kMinPrec = 64;

  BigComplex() : re_(kMinPrec), im_(kMinPrec) {}
  explicit BigComplex(long prec_bits) : re_(floor_prec(prec_bits)), im_(floor_prec(prec_bits)) {}
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  BigComplex(long v, long prec_bits) : re_(v, floor_prec(prec_bits)), im_(0, floor_prec(prec_bits)) {}
  BigComplex(const Rational& v, long prec_bits)
      : re_(v, floor_prec(prec_bits)), im_(0, floor_prec(prec_bits)) {}

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  long prec_bits() const { return std::min(re_.prec_bits(), im_.prec_bits()); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat n = b.norm();
    BigComplex c = a * b.conj();
    return {c.re_ / n, c.im_ / n};
  }
  BigComplex operator-() const { return {-re_, -im_}; }

  BigComplex& operator+=(const BigComplex& o) { *this = *this + o; return *this; }
  BigComplex& operator-=(const BigComplex& o) { *this = *this - o; return *this; }
  BigComplex& operator*=(const BigComplex& o) { *this = *this * o; return *this; }
  BigComplex& operator/=(const BigComplex& o) { *this = *this / o; return *this; }

  BigComplex conj() const { return {re_, -im_}; }
  BigFloat norm() const { return re_ * re_ + im_ * im_; }
  BigFloat abs() const { return norm().sqrt(); }

  BigComplex scaled(const BigFloat& s) const { return {re_ * s, im_ * s}; }
  BigComplex scaled(const Rational& s) const {
    BigFloat f(s, prec_bits());
    return scaled(f);
  }

  BigComplex pow(unsigned long e) const;
  BigComplex inverse() const {
    BigFloat n = norm();
    return {re_ / n, -(im_ / n)};
  }

  // e^{i x} for real x.
  static BigComplex cis(const BigFloat& x) { return {x.cos(), x.sin()}; }
  // exp of a general complex argument.
  BigComplex exp() const {
    BigFloat m = re_.exp();
    return cis(im_).scaled(m);
  }

  // Upper bound proxy for magnitude comparisons: 2^mag2() >= |z| / 2.
  long mag2() const { return std::max(re_.exponent(), im_.exponent()) + 1; }

  std::string to_string(size_t digits = 0) const;

private:
  static long floor_prec(long p) { return p < kMinPrec ? kMinPrec : p; }
  BigFloat re_, im_;
};

// e^{2*pi*i*tau/h} for tau in the upper half plane.
BigComplex nome_from_tau(const BigComplex& tau, long width_h);

} // namespace modcol

#endif
