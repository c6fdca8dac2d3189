#include "modcol/padic.hpp"

#include "modcol/error.hpp"

#include <algorithm>
#include <sstream>

namespace modcol {

namespace {

Integer ipow(const Integer& p, long e) {
  if (e < 0) throw Error("Domain", "negative power of p");
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

Integer mod_positive(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer invert(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error("Domain", "non-invertible element in modular inverse");
  return r;
}

} // namespace

PadicNumber::PadicNumber(Integer p, long val, Integer unit, long abs_prec)
    : p_(std::move(p)), val_(val), unit_(std::move(unit)), abs_prec_(abs_prec) {
  reduce();
}

void PadicNumber::reduce() {
  if (unit_ == 0) {
    val_ = abs_prec_;
    return;
  }
  long v = modcol::valuation(unit_, p_);
  if (v > 0) {
    unit_ /= ipow(p_, v);
    val_ += v;
  }
  long rel = abs_prec_ - val_;
  if (rel <= 0) {
    unit_ = 0;
    val_ = abs_prec_;
    return;
  }
  unit_ = mod_positive(unit_, ipow(p_, rel));
  if (unit_ == 0) val_ = abs_prec_;
}

PadicNumber PadicNumber::zero(const Integer& p, long abs_prec) {
  return PadicNumber(p, abs_prec, 0, abs_prec);
}

PadicNumber PadicNumber::from_integer(const Integer& n, const Integer& p, long abs_prec) {
  return PadicNumber(p, 0, n, abs_prec);
}

std::vector<long> PadicNumber::digits() const {
  std::vector<long> d;
  Integer u = unit_;
  for (long i = 0; i < rel_prec(); ++i) {
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), u.get_mpz_t(), p_.get_mpz_t());
    d.push_back(r.get_si());
    u = q;
  }
  return d;
}

PadicNumber PadicNumber::operator-() const {
  if (is_zero()) return *this;
  return PadicNumber(p_, val_, ipow(p_, rel_prec()) - unit_, abs_prec_);
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw Error("Domain", "mixed primes in p-adic arithmetic");
  long abs = std::min(a.abs_prec_, b.abs_prec_);
  if (a.is_zero()) return PadicNumber(b.p_, b.val_, b.unit_, abs);
  if (b.is_zero()) return PadicNumber(a.p_, a.val_, a.unit_, abs);
  long v = std::min(a.val_, b.val_);
  Integer s = a.unit_ * ipow(a.p_, a.val_ - v) + b.unit_ * ipow(b.p_, b.val_ - v);
  return PadicNumber(a.p_, v, s, abs);
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw Error("Domain", "mixed primes in p-adic arithmetic");
  if (a.is_zero() || b.is_zero()) {
    long abs = std::min(a.abs_prec_ + b.val_, b.abs_prec_ + a.val_);
    return PadicNumber::zero(a.p_, abs);
  }
  long rel = std::min(a.rel_prec(), b.rel_prec());
  long val = a.val_ + b.val_;
  return PadicNumber(a.p_, val, a.unit_ * b.unit_, val + rel);
}

PadicNumber PadicNumber::inverse() const {
  if (is_zero()) throw SingularToPrecision("inverse of zero to working precision");
  long rel = rel_prec();
  Integer inv = invert(unit_, ipow(p_, rel));
  return PadicNumber(p_, -val_, inv, -val_ + rel);
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return a * b.inverse(); }

bool operator==(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) return false;
  long m = std::min(a.abs_prec_, b.abs_prec_);
  auto truncate = [&](const PadicNumber& x) -> std::pair<long, Integer> {
    if (x.is_zero() || x.val_ >= m) return {m, 0};
    return {x.val_, mod_positive(x.unit_, ipow(x.p_, m - x.val_))};
  };
  return truncate(a) == truncate(b);
}

std::string PadicNumber::to_string() const {
  std::ostringstream os;
  std::string ps = p_.get_str();
  if (!is_zero()) {
    auto d = digits();
    bool first = true;
    for (size_t i = 0; i < d.size(); ++i) {
      if (d[i] == 0) continue;
      long k = val_ + static_cast<long>(i);
      if (!first) os << " + ";
      if (k == 0) {
        os << d[i];
      } else {
        if (d[i] != 1) os << d[i] << "*";
        os << ps;
        if (k != 1) os << "^" << k;
      }
      first = false;
    }
    if (!first) os << " + ";
  }
  os << "O(" << ps << "^" << abs_prec_ << ")";
  return os.str();
}

PadicNumber padic_from_rational(const Rational& r, const Integer& p, long abs_prec) {
  if (r == 0) return PadicNumber::zero(p, abs_prec);
  Integer num = r.get_num(), den = r.get_den();
  long a = valuation(num, p), b = valuation(den, p);
  long val = a - b;
  long rel = abs_prec - val;
  if (rel <= 0) return PadicNumber::zero(p, abs_prec);
  Integer pk = ipow(p, rel);
  Integer un = num / ipow(p, a);
  Integer ud = den / ipow(p, b);
  Integer unit = mod_positive(un * invert(mod_positive(ud, pk), pk), pk);
  return PadicNumber(p, val, unit, abs_prec);
}

std::vector<PadicNumber> padic_linear_solve(const PadicMatrix& M, const std::vector<PadicNumber>& b) {
  size_t n = M.rows();
  if (n == 0 || M.cols() != n || b.size() != n)
    throw Error("Domain", "padic_linear_solve needs a square system");
  // augmented matrix, eliminated in place
  std::vector<std::vector<PadicNumber>> a(n);
  for (size_t i = 0; i < n; ++i) {
    a[i] = M.entries[i];
    a[i].push_back(b[i]);
  }
  std::vector<size_t> where(n);
  std::vector<bool> used(n, false);
  for (size_t col = 0; col < n; ++col) {
    // minimal-valuation pivot among unused rows
    long best_val = 0;
    size_t best = n;
    for (size_t r = 0; r < n; ++r) {
      if (used[r] || a[r][col].is_zero()) continue;
      if (best == n || a[r][col].valuation() < best_val) {
        best = r;
        best_val = a[r][col].valuation();
      }
    }
    if (best == n) throw SingularToPrecision("no usable pivot in column " + std::to_string(col));
    used[best] = true;
    where[col] = best;
    PadicNumber inv = a[best][col].inverse();
    for (size_t j = col; j <= n; ++j) a[best][j] = a[best][j] * inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == best || a[r][col].is_zero()) continue;
      PadicNumber f = a[r][col];
      for (size_t j = col; j <= n; ++j) a[r][j] = a[r][j] - f * a[best][j];
    }
  }
  std::vector<PadicNumber> x;
  x.reserve(n);
  for (size_t col = 0; col < n; ++col) x.push_back(a[where[col]][n]);
  return x;
}

Rational newton_polygon_min_slope(const RationalPoly& P, const Integer& p) {
  RationalPoly Q = P;
  Q.normalize();
  int d = Q.degree();
  if (d < 1) throw Error("Domain", "Newton polygon needs deg >= 1");
  long vd = valuation(Q.coeff(d), p);
  bool any = false;
  Rational best;
  for (int i = 0; i < d; ++i) {
    if (Q.coeff(i) == 0) continue;
    Rational s(valuation(Q.coeff(i), p) - vd, d - i);
    s.canonicalize();
    if (!any || s < best) {
      best = s;
      any = true;
    }
  }
  if (!any) return Rational(1000000); // all roots are 0
  return best;
}

namespace {

// ceil of a rational
Integer rceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

} // namespace

PadicNumber padic_eval_series(const std::vector<Rational>& x,
                              const std::vector<Rational>& power_sums,
                              const Integer& p, long target_prec,
                              const Rational& v_min) {
  size_t n = std::min(x.size(), power_sums.size());
  if (n == 0) throw InsufficientOrder("empty series");
  if (!(v_min > 0)) throw NotInDisc("endpoint valuations must be positive");
  for (size_t k = 0; k < power_sums.size(); ++k) {
    if (power_sums[k] == 0) continue;
    if (valuation(power_sums[k], p) <= 0)
      throw NotInDisc("power sum " + std::to_string(k + 1) + " has non-positive valuation");
  }

  // tail certification: every dropped term x_k * p_{k+1}/(k+1) has valuation
  // at least ceil((k+1) * v_min) - v_p(k+1) + v_p(x_k); conservatively take
  // v_p(x_k) >= min observed coefficient valuation (0 for integral series).
  long x_val_floor = 0;
  for (const auto& c : x)
    if (c != 0) x_val_floor = std::min(x_val_floor, valuation(c, p));
  long certified = -1;
  for (size_t k = n; k < n + 400; ++k) {
    Rational kv = Rational(static_cast<long>(k) + 1) * v_min;
    long term = rceil(kv).get_si() - valuation(Integer(static_cast<long>(k) + 1), p) + x_val_floor;
    if (certified < 0 || term < certified) certified = term;
  }
  if (certified < target_prec) {
    std::ostringstream os;
    os << "tail certifies only O(p^" << certified << ") with " << n
       << " terms; raise the expansion order";
    throw InsufficientOrder(os.str());
  }

  Rational sum = 0;
  for (size_t k = 0; k < n; ++k) {
    if (x[k] == 0 || power_sums[k] == 0) continue;
    sum -= x[k] / Rational(static_cast<long>(k) + 1) * power_sums[k];
  }
  return padic_from_rational(sum, p, target_prec);
}

std::vector<PadicNumber> hensel_roots(const RationalPoly& P, const Integer& p, long abs_prec,
                                      std::vector<long>* degenerate) {
  RationalPoly Q = P;
  Q.normalize();
  if (Q.is_zero()) throw Error("Domain", "hensel_roots of zero polynomial");
  // clear denominators to an integer polynomial
  Integer lcm = 1;
  for (const auto& c : Q.coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Integer> f;
  for (const auto& c : Q.coeffs) f.push_back(Integer(c.get_num()) * (lcm / Integer(c.get_den())));

  auto eval_mod = [&](const std::vector<Integer>& poly, const Integer& t, const Integer& m) -> Integer {
    Integer acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = mod_positive(acc * t + *it, m);
    return acc;
  };
  std::vector<Integer> df;
  for (size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * Integer(static_cast<long>(i)));

  std::vector<PadicNumber> roots;
  for (Integer r = 0; r < p; ++r) {
    if (eval_mod(f, r, p) != 0) continue;
    if (eval_mod(df, r, p) == 0) {
      if (degenerate) degenerate->push_back(r.get_si());
      continue;
    }
    // Newton iteration with doubling modulus
    Integer x = r;
    long k = 1;
    while (k < abs_prec) {
      k = std::min(2 * k, abs_prec);
      Integer m = ipow(p, k);
      Integer fx = eval_mod(f, x, m);
      Integer dfx = eval_mod(df, x, m);
      x = mod_positive(x - fx * invert(dfx, m), m);
    }
    roots.push_back(PadicNumber(p, 0, x, abs_prec));
  }
  return roots;
}

} // namespace modcol
