#ifndef MODCOL_RATIONAL_HPP
#define MODCOL_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace modcol {

// Exact rationals are GMP rationals throughout; mpq_class already keeps the
// canonical form (denominator > 0, gcd = 1).
using Integer = mpz_class;
using Rational = mpq_class;

// p-adic valuation of a nonzero integer.
long valuation(const Integer& n, const Integer& p);

// p-adic valuation of a rational; throws on zero input.
long valuation(const Rational& r, const Integer& p);

Rational rational_from_string(const std::string& s);

// Dense univariate polynomial over Q, coefficient of t^i at index i.
// Trailing zero coefficients are trimmed by normalize().
struct RationalPoly {
  std::vector<Rational> coeffs;

  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> c) : coeffs(std::move(c)) { normalize(); }

  void normalize();
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  Rational coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(coeffs.size())) ? coeffs[i] : Rational(0);
  }
  Rational eval(const Rational& x) const;
  RationalPoly derivative() const;
  void make_monic();
  bool is_monic() const;

  bool operator==(const RationalPoly& o) const { return coeffs == o.coeffs; }

  std::string to_string(const std::string& var = "t") const;
};

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);

// Dense integer polynomial, used for algdep outputs.
struct IntPoly {
  std::vector<Integer> coeffs;

  void normalize();
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  // Divides out the content and flips the sign so the leading coefficient
  // is positive.
  void primitive_positive();
  Integer height() const;
  RationalPoly as_rational() const;
  std::string to_string(const std::string& var = "x") const;
};

} // namespace modcol

#endif
