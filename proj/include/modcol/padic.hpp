#ifndef MODCOL_PADIC_HPP
#define MODCOL_PADIC_HPP

#include "modcol/rational.hpp"

#include <string>
#include <vector>

namespace modcol {

// Element of Q_p at capped absolute precision: value = unit * p^val with
// p ∤ unit, known modulo p^abs_prec. Zero is unit == 0 (exact up to the
// stated precision). Arithmetic tracks precision: addition keeps the min
// absolute precision, multiplication the min relative precision.
class PadicNumber {
public:
  PadicNumber() = default;
  PadicNumber(Integer p, long val, Integer unit, long abs_prec);

  static PadicNumber zero(const Integer& p, long abs_prec);
  static PadicNumber from_integer(const Integer& n, const Integer& p, long abs_prec);

  const Integer& prime() const { return p_; }
  long valuation() const { return val_; }
  const Integer& unit() const { return unit_; }
  long abs_prec() const { return abs_prec_; }
  long rel_prec() const { return is_zero() ? 0 : abs_prec_ - val_; }
  bool is_zero() const { return unit_ == 0; }

  // base-p digits of the unit part, least significant first
  std::vector<long> digits() const;

  PadicNumber operator-() const;
  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
  PadicNumber inverse() const;

  // agreement to the shared precision
  friend bool operator==(const PadicNumber& a, const PadicNumber& b);

  // paper-style rendering: "1 + 2*3 + 3^2 + O(3^14)", zero digits omitted
  std::string to_string() const;

private:
  void reduce();
  Integer p_ = 2;
  long val_ = 0;
  Integer unit_ = 0;
  long abs_prec_ = 0;
};

PadicNumber padic_from_rational(const Rational& r, const Integer& p, long abs_prec);

struct PadicMatrix {
  std::vector<std::vector<PadicNumber>> entries;
  Integer p;

  size_t rows() const { return entries.size(); }
  size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }
};

// Gaussian elimination choosing the minimal-valuation pivot in each column
// (least precision loss). Throws SingularToPrecision when a column has no
// pivot distinguishable from zero.
std::vector<PadicNumber> padic_linear_solve(const PadicMatrix& M, const std::vector<PadicNumber>& b);

// Minimal p-adic valuation among the roots of P, read off the Newton
// polygon: min over i < d of (v(a_i) - v(a_d)) / (d - i).
Rational newton_polygon_min_slope(const RationalPoly& P, const Integer& p);

// Sum of tiny integrals: -Σ_k x_k/(k+1) * power_sums[k] evaluated in Q_p,
// where power_sums[k] = Σ_i u(Q_i)^{k+1}. Digits are only reported up to
// the precision certified by the tail bound derived from v_min (the minimal
// valuation of the endpoints u(Q_i)).
//
// Sign note: x holds the series coefficients of ω = Σ x_k u^k du, and the
// tiny integrals run from Q_i to Q, i.e. from u = u(Q_i) to u = 0, so each
// term contributes -x_k u(Q_i)^{k+1}/(k+1).
PadicNumber padic_eval_series(const std::vector<Rational>& x,
                              const std::vector<Rational>& power_sums,
                              const Integer& p, long target_prec,
                              const Rational& v_min);

// All simple roots of P in Z_p lifted to the requested precision; residues
// where P and P' both vanish mod p are skipped and reported in *degenerate
// when non-null.
std::vector<PadicNumber> hensel_roots(const RationalPoly& P, const Integer& p, long abs_prec,
                                      std::vector<long>* degenerate = nullptr);

} // namespace modcol

#endif
