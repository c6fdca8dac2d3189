#include "modcol/modfunc.hpp"

#include "modcol/error.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace modcol {

bool QExpansion::is_rational() const {
  for (const auto& c : coeffs) {
    for (size_t i = 1; i < c.size(); ++i)
      if (c[i] != 0) return false;
  }
  return true;
}

Rational QExpansion::rational_coeff(long n) const {
  if (n < 0 || n >= n_terms()) return Rational(0);
  const auto& c = coeffs[static_cast<size_t>(n)];
  for (size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) throw Error("Domain", "coefficient is not rational");
  return c.empty() ? Rational(0) : c[0];
}

BigComplex QExpansion::embedded_coeff(long n, long prec) const {
  if (n < 0 || n >= n_terms()) return BigComplex(prec);
  const auto& c = coeffs[static_cast<size_t>(n)];
  if (c.size() <= 1) return BigComplex(c.empty() ? Rational(0) : c[0], prec);
  BigFloat two_pi_over_N = BigFloat::pi(prec).mul_2exp(1) / BigFloat(N, prec);
  BigComplex zeta = BigComplex::cis(two_pi_over_N);
  BigComplex acc(prec);
  for (size_t i = c.size(); i-- > 0;) {
    acc *= zeta;
    acc += BigComplex(c[i], prec);
  }
  return acc;
}

bool QExpansion::is_zero() const {
  for (const auto& c : coeffs)
    for (const auto& v : c)
      if (v != 0) return false;
  return true;
}

namespace {

// natural log of |q0|, as a double (safe: the value is moderate)
double ln_abs(const BigComplex& q0) {
  if (q0.is_zero()) return -1e18;
  BigFloat l = q0.norm().log();
  return 0.5 * l.to_double();
}

// Smallest exponent cutoff E such that dropping q-powers above E keeps every
// Taylor coefficient of t^i (i < order) below 2^-(prec+64): the dropped terms
// carry binomials C(n, i) <= n^i, hence solve n^(order+slack) * |q0|^n small.
long exponent_cutoff(double la, int order, long prec, int slack) {
  if (la > -1e-9) throw ConvergenceFailure("|q0| too close to 1");
  double L = (static_cast<double>(prec) + 64.0) * 0.6931471805599453;
  double e = 16;
  for (int it = 0; it < 6; ++it)
    e = (L + (order + slack) * std::log(e + 2.0)) / (-la);
  long E = static_cast<long>(std::ceil(e)) + 1;
  if (E < order + 2) E = order + 2;
  return E;
}

// acc += s * (q0 + t)^E, truncated to acc.size() coefficients
void add_binomial_row(std::vector<BigComplex>& acc, const BigComplex& q0, const BigComplex& q0_inv,
                      long E, int s, long prec) {
  BigComplex term = q0.pow(static_cast<unsigned long>(E));
  int order = static_cast<int>(acc.size());
  for (int i = 0; i < order; ++i) {
    if (s > 0)
      acc[static_cast<size_t>(i)] += term;
    else
      acc[static_cast<size_t>(i)] -= term;
    if (i >= E) break;
    term = (term * q0_inv).scaled(Rational(E - i, i + 1));
  }
  (void)prec;
}

// Euler function a(q^m) = prod (1 - q^{mn}) at q = q0 + t, via the pentagonal
// number series, dropping exponents above e_max.
ComplexSeries euler_a_series(const BigComplex& q0, long m, int order, long e_max) {
  long prec = q0.prec_bits();
  std::vector<BigComplex> acc(static_cast<size_t>(order), BigComplex(prec));
  acc[0] = BigComplex(1, prec); // k = 0 term
  BigComplex q0_inv = q0.inverse();
  for (long k = 1;; ++k) {
    long g1 = k * (3 * k - 1) / 2;
    long g2 = k * (3 * k + 1) / 2;
    if (m * g1 > e_max) break;
    int s = (k % 2 == 1) ? -1 : 1;
    add_binomial_row(acc, q0, q0_inv, m * g1, s, prec);
    if (m * g2 <= e_max) add_binomial_row(acc, q0, q0_inv, m * g2, s, prec);
  }
  return ComplexSeries(std::move(acc), "q-q0");
}

// (q0 + t)^m as a series
ComplexSeries power_series_of_q(const BigComplex& q0, long m, int order) {
  long prec = q0.prec_bits();
  std::vector<BigComplex> acc(static_cast<size_t>(order), BigComplex(prec));
  add_binomial_row(acc, q0, q0.inverse(), m, 1, prec);
  return ComplexSeries(std::move(acc), "q-q0");
}

} // namespace

ComplexSeries j_taylor_scaled(const BigComplex& q0, long m, int order) {
  if (q0.is_zero()) throw ConvergenceFailure("expansion point q0 = 0");
  long prec = q0.prec_bits();
  double la = ln_abs(q0);
  long e_max = exponent_cutoff(la, order, prec, 2);
  if (e_max > 4'000'000)
    throw ConvergenceFailure("pentagonal cutoff " + std::to_string(e_max) +
                             " exceeds budget; |q0| too close to 1");

  ComplexSeries A = euler_a_series(q0, m, order, e_max);
  ComplexSeries A2 = euler_a_series(q0, 2 * m, order, e_max);
  ComplexSeries qm = power_series_of_q(q0, m, order);

  // f = Delta(q^{2m}) / Delta(q^m) = q^m * a(q^{2m})^24 / a(q^m)^24
  ComplexSeries f = qm * A2.pow(24) * A.pow(24).inverse();
  // j = (256 f + 1)^3 / f
  ComplexSeries g = f.scaled(BigComplex(256, prec)) + ComplexSeries::constant(BigComplex(1, prec), order, "q-q0");
  return g.pow(3) * f.inverse();
}

ComplexSeries j_taylor(const BigComplex& q0, int order) { return j_taylor_scaled(q0, 1, order); }

ComplexSeries euler_function_taylor(const BigComplex& q0, int order) {
  long prec = q0.prec_bits();
  long e_max = exponent_cutoff(ln_abs(q0), order, prec, 2);
  return euler_a_series(q0, 1, order, e_max);
}

long qexp_required_terms(const BigComplex& q0, int order, long prec) {
  double la = ln_abs(q0);
  return exponent_cutoff(la, order, prec, 3);
}

ComplexSeries qexp_taylor(const QExpansion& f, const BigComplex& q0, int order) {
  long prec = q0.prec_bits();
  if (f.is_zero()) return ComplexSeries::zero(order, BigComplex(prec), "q-q0");
  long M = qexp_required_terms(q0, order, prec);
  if (M > f.n_terms()) {
    std::ostringstream os;
    os << "q-expansion has " << f.n_terms() << " terms but the tail bound needs " << M;
    throw InsufficientTerms(os.str());
  }
  BigComplex one(1, prec);
  ComplexSeries S = ComplexSeries::zero(order, BigComplex(prec), "q-q0");
  for (long n = M - 1; n >= 0; --n) {
    S = S.mul_linear(q0, one);
    const auto& c = f.coeffs[static_cast<size_t>(n)];
    bool nonzero = false;
    for (const auto& v : c)
      if (v != 0) { nonzero = true; break; }
    if (nonzero) S.at(0) += f.embedded_coeff(n, prec);
  }
  return S;
}

ComplexSeries uniformizer_series(UniformizerKind kind, const BigComplex& q0, long N, long h,
                                 int order) {
  switch (kind) {
    case UniformizerKind::J:
      return j_taylor_scaled(q0, h, order);
    case UniformizerKind::ONE_OVER_J:
      return j_taylor_scaled(q0, h, order).inverse();
    case UniformizerKind::J_PLUS_JN:
      return j_taylor_scaled(q0, h, order) + j_taylor_scaled(q0, h * N, order);
    case UniformizerKind::J_TIMES_JN:
      return j_taylor_scaled(q0, h, order) * j_taylor_scaled(q0, h * N, order);
  }
  throw Error("Domain", "unknown uniformizer kind");
}

ComplexSeries uniformizer_taylor(const UniformizerSpec& spec, const BigComplex& q0, long N,
                                 long h, int order) {
  long prec = q0.prec_bits();
  ComplexSeries u = uniformizer_series(spec.kind, q0, N, h, order);
  u.at(0) -= BigComplex(spec.base_value, prec);
  // the expansion point must sit over the base point
  BigFloat thresh = BigFloat(1, prec).mul_2exp(-prec / 4);
  BigFloat scale = u[1].abs() + BigFloat(1, prec);
  if (!(u[0].abs() < thresh * scale))
    throw BasePointMismatch("uniformizer constant term is not small at q0");
  return u;
}

QExpansion hecke_on_qexp(const QExpansion& f, long p) {
  if (p < 2) throw Error("Domain", "p must be at least 2");
  long out_terms = f.n_terms() / p;
  if (out_terms < 2) throw InsufficientTerms("q-expansion too short for the Hecke action");
  QExpansion g;
  g.N = f.N;
  g.weight = f.weight;
  g.h = f.h;
  g.coeffs.resize(static_cast<size_t>(out_terms));
  for (long n = 0; n < out_terms; ++n) {
    std::vector<Rational> b = f.coeffs[static_cast<size_t>(n * p)];
    if (n % p == 0) {
      const auto& low = f.coeffs[static_cast<size_t>(n / p)];
      if (b.size() < low.size()) b.resize(low.size(), Rational(0));
      for (size_t i = 0; i < low.size(); ++i) b[i] += Rational(p) * low[i];
    }
    g.coeffs[static_cast<size_t>(n)] = std::move(b);
  }
  return g;
}

std::vector<std::vector<Rational>> hecke_matrix_from_basis(const std::vector<QExpansion>& basis,
                                                           long p) {
  size_t g = basis.size();
  if (g == 0) throw Error("Domain", "empty basis");
  for (const auto& f : basis)
    if (!f.is_rational()) throw Error("Domain", "hecke_matrix_from_basis needs rational coefficients");

  std::vector<QExpansion> images;
  long L = basis[0].n_terms();
  for (const auto& f : basis) {
    images.push_back(hecke_on_qexp(f, p));
    L = std::min(L, images.back().n_terms());
  }
  if (L < static_cast<long>(2 * g + 2))
    throw InsufficientTerms("not enough coefficients to solve and verify the Hecke matrix");

  // rows indexed by coefficient position n = 1..L-1:
  //   sum_j A_ij * basis_j[n] = T_p(basis_i)[n]
  size_t nrows = static_cast<size_t>(L - 1);
  std::vector<std::vector<Rational>> M(nrows, std::vector<Rational>(g + g));
  for (size_t r = 0; r < nrows; ++r) {
    long n = static_cast<long>(r) + 1;
    for (size_t j = 0; j < g; ++j) M[r][j] = basis[j].rational_coeff(n);
    for (size_t i = 0; i < g; ++i) M[r][g + i] = images[i].rational_coeff(n);
  }

  // exact row reduction
  size_t rank = 0;
  std::vector<size_t> pivot_rows;
  for (size_t col = 0; col < g && rank < nrows; ++col) {
    size_t piv = nrows;
    for (size_t r = rank; r < nrows; ++r)
      if (M[r][col] != 0) { piv = r; break; }
    if (piv == nrows) continue;
    std::swap(M[rank], M[piv]);
    Rational inv = 1 / M[rank][col];
    for (auto& v : M[rank]) v *= inv;
    for (size_t r = 0; r < nrows; ++r) {
      if (r == rank || M[r][col] == 0) continue;
      Rational f = M[r][col];
      for (size_t c = col; c < M[r].size(); ++c) M[r][c] -= f * M[rank][c];
    }
    pivot_rows.push_back(col);
    ++rank;
  }
  if (rank < g) throw RankDeficient("basis coefficients do not determine the Hecke matrix");
  // rows past the rank must have vanished entirely, or the overdetermined
  // system is inconsistent
  for (size_t r = rank; r < nrows; ++r)
    for (size_t c = 0; c < g + g; ++c)
      if (M[r][c] != 0) throw VerificationFailed("extra q-expansion coefficients disagree with the solved matrix");

  std::vector<std::vector<Rational>> A(g, std::vector<Rational>(g));
  for (size_t i = 0; i < g; ++i)
    for (size_t jr = 0; jr < g; ++jr) A[i][pivot_rows[jr]] = M[jr][g + i];
  return A;
}

} // namespace modcol
