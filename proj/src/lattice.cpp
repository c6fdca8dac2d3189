#include "modcol/lattice.hpp"

#include "modcol/error.hpp"

#include <algorithm>

namespace modcol {

namespace {

Rational dot(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  Integer s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return Rational(s);
}

Rational dot(const std::vector<Rational>& a, const std::vector<Integer>& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
  return s;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer round_nearest(const Rational& x) {
  // floor(x + 1/2)
  Integer num = x.get_num() * 2 + x.get_den();
  Integer den = x.get_den() * 2;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

struct Gso {
  // b_star[k] and B[k] = |b_star[k]|^2, mu[k][j] for j < k.
  std::vector<std::vector<Rational>> b_star;
  std::vector<Rational> B;
  std::vector<std::vector<Rational>> mu;

  void compute_row(const std::vector<std::vector<Integer>>& b, size_t k) {
    std::vector<Rational> v(b[k].size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = Rational(b[k][i]);
    for (size_t j = 0; j < k; ++j) {
      if (B[j] == 0) continue;
      mu[k][j] = dot(b_star[j], b[k]) / B[j];
      for (size_t i = 0; i < v.size(); ++i) v[i] -= mu[k][j] * b_star[j][i];
    }
    b_star[k] = v;
    B[k] = dot(v, v);
  }
};

} // namespace

IntLattice lll_reduce(const IntLattice& lattice, const Rational& delta) {
  if (lattice.basis.empty()) return lattice;
  size_t n = lattice.rows();
  std::vector<std::vector<Integer>> b = lattice.basis;

  Gso g;
  g.b_star.resize(n);
  g.B.assign(n, Rational(0));
  g.mu.assign(n, std::vector<Rational>(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) {
    g.compute_row(b, i);
    if (g.B[i] == 0) throw DependentRows("lattice basis rows are linearly dependent");
  }

  auto reduce_pair = [&](size_t k, size_t l) {
    if (2 * abs(g.mu[k][l].get_num()) <= g.mu[k][l].get_den()) return;
    Integer q = round_nearest(g.mu[k][l]);
    for (size_t i = 0; i < b[k].size(); ++i) b[k][i] -= q * b[l][i];
    Rational qr(q);
    for (size_t j = 0; j < l; ++j) g.mu[k][j] -= qr * g.mu[l][j];
    g.mu[k][l] -= qr;
  };

  size_t k = 1;
  while (k < n) {
    reduce_pair(k, k - 1);
    Rational lhs = g.B[k];
    Rational rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.B[k - 1];
    if (lhs < rhs) {
      std::swap(b[k], b[k - 1]);
      // recompute GSO rows k-1..n-1 from scratch; simple and exact
      for (size_t i = k - 1; i < n; ++i) g.compute_row(b, i);
      if (k > 1) --k;
    } else {
      for (size_t l = k - 1; l-- > 0;) reduce_pair(k, l);
      ++k;
    }
  }

  IntLattice out;
  out.basis = std::move(b);
  return out;
}

namespace {

Integer scaled_round(const BigFloat& x, long scale_bits) {
  return x.mul_2exp(scale_bits).round_to_integer();
}

// Residual acceptance: |P(z)| < 2^(-prec/2) * height(P).
bool residual_ok(const IntPoly& P, const BigComplex& z) {
  long prec = z.prec_bits();
  BigComplex val(0, prec);
  for (auto it = P.coeffs.rbegin(); it != P.coeffs.rend(); ++it) {
    val *= z;
    val += BigComplex(BigFloat(*it, prec), BigFloat(0, prec));
  }
  BigFloat h(P.height(), prec);
  BigFloat thresh = h.mul_2exp(-prec / 2);
  return val.abs() < thresh;
}

} // namespace

IntPoly algdep(const BigComplex& z, int degree, long height_bits) {
  if (degree < 1) throw Error("Domain", "algdep degree must be >= 1");
  long prec = z.prec_bits();
  long scale = prec - 8; // small headroom so rounding noise stays below the scale
  if (scale < 16) scale = 16;

  size_t n = static_cast<size_t>(degree) + 1;
  IntLattice lat;
  lat.basis.assign(n, std::vector<Integer>(n + 2, Integer(0)));
  BigComplex zi(1, prec);
  for (size_t i = 0; i < n; ++i) {
    lat.basis[i][i] = 1;
    lat.basis[i][n] = scaled_round(zi.re(), scale);
    lat.basis[i][n + 1] = scaled_round(zi.im(), scale);
    zi *= z;
  }

  IntLattice red = lll_reduce(lat);
  Integer bound = Integer(1) << static_cast<unsigned long>(height_bits > 0 ? height_bits : prec / 4);
  for (const auto& row : red.basis) {
    IntPoly P;
    P.coeffs.assign(row.begin(), row.begin() + static_cast<long>(n));
    P.normalize();
    if (P.coeffs.empty()) continue;
    P.primitive_positive();
    if (P.height() >= bound) continue;
    if (residual_ok(P, z)) return P;
  }
  throw NoRelationFound("no integer relation passed the residual test (raise precision or degree)");
}

Rational rational_reconstruct(const BigComplex& z, long height_bits, long tol_exp2) {
  long prec = z.prec_bits();
  // the reachable accuracy is relative to |z|, so scale the cutoff with it
  BigFloat scale = z.re().abs() + BigFloat(1, prec);
  BigFloat thresh = scale.mul_2exp(-prec / 2);
  if (tol_exp2 != std::numeric_limits<long>::min()) {
    BigFloat tol = BigFloat(1, prec).mul_2exp(tol_exp2);
    if (tol > thresh) thresh = tol;
  }
  if (!(z.im().abs() < thresh)) throw NotReal("imaginary part above reconstruction threshold");
  if (z.re().abs() < thresh) return Rational(0);

  // exact binary value of the mantissa
  Rational x;
  mpfr_get_q(x.get_mpq_t(), z.re().raw());

  // per-unit-denominator tolerance: working roundoff, or the caller's noise
  // floor if that is coarser
  Rational tol_q = Rational(1) / (Integer(1) << static_cast<unsigned long>(prec / 2));
  if (tol_exp2 != std::numeric_limits<long>::min() && tol_exp2 > -prec / 2) {
    if (tol_exp2 >= 0)
      tol_q = Rational(Integer(1) << static_cast<unsigned long>(tol_exp2));
    else
      tol_q = Rational(1) / (Integer(1) << static_cast<unsigned long>(-tol_exp2));
  }
  Rational thresh_q;
  mpfr_get_q(thresh_q.get_mpq_t(), thresh.raw());

  // continued-fraction convergents of x; accept the first whose residual
  // |q*x - p| fits the noise model q*tol + thresh AND is far inside the
  // 1/q uniqueness radius (a wrong convergent has residual ~ 1/q_next, so
  // it would need a 2^32 partial quotient to pass). Fail once the
  // denominator passes the height bound.
  Integer bound = Integer(1) << static_cast<unsigned long>(height_bits);
  Rational confidence = Rational(1) / (Integer(1) << 32);
  Integer p_prev(1), q_prev(0), p_cur, q_cur(1);
  Rational rem = x;
  mpz_fdiv_q(p_cur.get_mpz_t(), rem.get_num().get_mpz_t(), rem.get_den().get_mpz_t());
  for (int it = 0; it < 1000000; ++it) {
    if (q_cur > bound) break;
    Rational resid = abs(Rational(q_cur) * x - Rational(p_cur));
    if (resid <= Rational(q_cur) * tol_q + thresh_q && resid * Rational(q_cur) < confidence) {
      Rational r(p_cur, q_cur);
      r.canonicalize();
      return r;
    }
    Rational frac = rem - Rational([&]() -> Integer {
      Integer f;
      mpz_fdiv_q(f.get_mpz_t(), rem.get_num().get_mpz_t(), rem.get_den().get_mpz_t());
      return f;
    }());
    if (frac == 0) break; // x itself is the last convergent and it failed
    rem = 1 / frac;
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), rem.get_num().get_mpz_t(), rem.get_den().get_mpz_t());
    Integer p_next = a * p_cur + p_prev;
    Integer q_next = a * q_cur + q_prev;
    p_prev = p_cur; q_prev = q_cur;
    p_cur = p_next; q_cur = q_next;
  }
  throw NoRelationFound("no convergent within the height bound passed the residual test");
}

std::vector<Rational> power_sums_from_poly(const RationalPoly& P, int k_max) {
  RationalPoly Q = P;
  Q.normalize();
  int d = Q.degree();
  if (d < 1) throw Error("Domain", "power sums need deg >= 1");
  if (!Q.is_monic()) Q.make_monic();

  // e_i = (-1)^i * coeff of t^{d-i}
  std::vector<Rational> e(static_cast<size_t>(d) + 1);
  e[0] = 1;
  for (int i = 1; i <= d; ++i) {
    e[static_cast<size_t>(i)] = Q.coeff(d - i);
    if (i % 2 == 1) e[static_cast<size_t>(i)] = -e[static_cast<size_t>(i)];
  }

  std::vector<Rational> p(static_cast<size_t>(k_max) + 1);
  p[0] = d;
  for (int k = 1; k <= k_max; ++k) {
    Rational s = 0;
    for (int i = 1; i < k && i <= d; ++i) {
      Rational term = e[static_cast<size_t>(i)] * p[static_cast<size_t>(k - i)];
      s += (i % 2 == 1) ? term : -term;
    }
    if (k <= d) {
      Rational tail = Rational(k) * e[static_cast<size_t>(k)];
      s += (k % 2 == 1) ? tail : -tail;
    }
    p[static_cast<size_t>(k)] = s;
  }
  return std::vector<Rational>(p.begin() + 1, p.end());
}

RationalPoly poly_from_complex_roots(const std::vector<BigComplex>& roots, long height_bits) {
  if (roots.empty()) throw Error("Domain", "need at least one root");
  long prec = roots[0].prec_bits();
  std::vector<BigComplex> c(1, BigComplex(1, prec));
  for (const auto& r : roots) {
    std::vector<BigComplex> next(c.size() + 1, BigComplex(prec));
    for (size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];        // t * c_i
      next[i] -= c[i] * r;        // -r * c_i
    }
    c = std::move(next);
  }
  // c[i] is the coefficient of t^i with c.back() = 1
  RationalPoly out;
  out.coeffs.resize(c.size());
  // roundoff in every coefficient is governed by the largest one produced
  // along the way, not by the coefficient's own size
  long max_exp = 0;
  for (const auto& ci : c)
    if (!(ci.abs() < BigFloat(1, prec))) max_exp = std::max(max_exp, ci.abs().exponent());
  long noise_exp = max_exp - (3 * prec) / 4;
  for (size_t i = 0; i < c.size(); ++i) {
    // the coefficient magnitude itself may dwarf the requested height bound
    long mag = c[i].re().abs() < BigFloat(1, prec) ? 0 : c[i].re().exponent();
    out.coeffs[i] = rational_reconstruct(c[i], std::max(height_bits, mag + 64), noise_exp);
  }
  out.normalize();
  if (!out.is_monic()) throw NoRelationFound("reconstructed polynomial is not monic");

  // back-substitute every root through the exact polynomial
  BigFloat scale(1, prec);
  for (const auto& q : out.coeffs) {
    Integer hq = abs(Integer(q.get_num())) + Integer(q.get_den());
    BigFloat m(hq, prec);
    if (m > scale) scale = m;
  }
  for (const auto& r : roots) {
    BigComplex val(prec);
    // Horner intermediates reach scale * max(1, |r|)^n, which bounds the
    // attainable evaluation accuracy at working precision
    BigFloat grow(1, prec);
    BigFloat ra = r.abs();
    for (auto it = out.coeffs.rbegin(); it != out.coeffs.rend(); ++it) {
      val = val * r + BigComplex(*it, prec);
      if (ra > BigFloat(1, prec)) grow = grow * ra;
    }
    BigFloat thresh = (scale * grow).mul_2exp(-prec / 2);
    if (!(val.abs() < thresh)) throw NoRelationFound("reconstructed polynomial fails at a root");
  }
  return out;
}

} // namespace modcol
