#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modcol/error.hpp"
#include "modcol/modfunc.hpp"

#include <vector>

using namespace modcol;

namespace {

BigComplex real_nome(double im_tau, long prec) {
  // q = e^{-2 pi Im(tau)} for tau purely imaginary
  BigFloat two_pi = BigFloat::pi(prec).mul_2exp(1);
  BigFloat y(0, prec);
  mpfr_set_d(y.raw(), im_tau, MPFR_RNDN);
  return BigComplex((two_pi * (-y)).exp(), BigFloat(0, prec));
}

// integer q-series product helper for building eta-type expansions in tests
std::vector<long> series_mul(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> r(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// q * prod (1-q^n)^2 (1-q^{11n})^2: the weight-2 newform of level 11
QExpansion level11_form(size_t terms) {
  std::vector<long> s(terms, 0);
  s[0] = 1;
  for (size_t n = 1; n < terms; ++n) {
    std::vector<long> factor(terms, 0);
    factor[0] = 1;
    if (n < terms) factor[n] -= 1;
    s = series_mul(s, factor);
    s = series_mul(s, factor);
    if (11 * n < terms) {
      std::vector<long> f11(terms, 0);
      f11[0] = 1;
      f11[11 * n] -= 1;
      s = series_mul(s, f11);
      s = series_mul(s, f11);
    }
  }
  QExpansion f;
  f.N = 11;
  f.h = 1;
  f.coeffs.resize(terms);
  f.coeffs[0] = {Rational(0)};
  for (size_t n = 1; n < terms; ++n) f.coeffs[n] = {Rational(s[n - 1])};
  return f;
}

} // namespace

TEST_CASE("euler function leading terms (pentagonal series)") {
  // 1 - q - q^2 + q^5 + q^7 - q^12 - ...
  BigComplex q0(Rational(1, 100), 200);
  ComplexSeries a = euler_function_taylor(q0, 1);
  double expect = 1 - 0.01 - 1e-4 + 1e-10 + 1e-14;
  CHECK(a[0].re().to_double() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(a[0].im().to_double() == doctest::Approx(0.0));
}

TEST_CASE("j(i) = 1728") {
  BigComplex q0 = real_nome(1.0, 300);
  ComplexSeries j = j_taylor(q0, 3);
  BigComplex diff = j[0] - BigComplex(1728, 300);
  CHECK(diff.abs().to_double() < 1e-60);
}

TEST_CASE("j(rho) = 0 at tau = (1+sqrt(-3))/2") {
  long prec = 300;
  BigFloat half(Rational(1, 2), prec);
  BigFloat root3_half = (BigFloat(3, prec).sqrt()) / BigFloat(2, prec);
  BigComplex tau(half, root3_half);
  BigComplex q0 = nome_from_tau(tau, 1);
  ComplexSeries j = j_taylor(q0, 2);
  CHECK(j[0].abs().to_double() < 1e-60);
}

TEST_CASE("j derivative matches finite differences") {
  long prec = 300;
  BigComplex q0 = real_nome(0.9, prec);
  ComplexSeries j = j_taylor(q0, 3);
  BigFloat delta = BigFloat(1, prec).mul_2exp(-prec / 3);
  BigComplex qp(q0.re() + delta, q0.im());
  BigComplex qm(q0.re() - delta, q0.im());
  BigComplex fd = (j_taylor(qp, 1)[0] - j_taylor(qm, 1)[0]) / BigComplex(delta.mul_2exp(1), BigFloat(0, prec));
  BigFloat rel = (j[1] - fd).abs() / j[1].abs();
  CHECK(rel < BigFloat(1, prec).mul_2exp(-prec / 4));
}

TEST_CASE("j_taylor_scaled: j(q^2) equals j at the squared nome") {
  long prec = 250;
  BigComplex q0 = real_nome(0.8, prec);
  ComplexSeries j2 = j_taylor_scaled(q0, 2, 1);
  ComplexSeries j_direct = j_taylor(q0 * q0, 1);
  CHECK((j2[0] - j_direct[0]).abs().to_double() < 1e-50);
}

TEST_CASE("convergence guard rejects |q0| near 1") {
  BigComplex q0(Rational(999999, 1000000), 200);
  CHECK_THROWS_AS(j_taylor(q0, 4), ConvergenceFailure);
}

TEST_CASE("qexp_taylor: truncated form evaluated near zero") {
  // f = q + q^3 - 2 q^4, padded with exact zeros
  QExpansion f;
  f.N = 37;
  f.h = 1;
  f.coeffs.assign(80, {Rational(0)});
  f.coeffs[1] = {Rational(1)};
  f.coeffs[3] = {Rational(1)};
  f.coeffs[4] = {Rational(-2)};
  BigComplex q0(Rational(1, 100), 64);
  ComplexSeries s = qexp_taylor(f, q0, 1);
  double expect = 0.01 + 1e-6 - 2e-8;
  CHECK(s[0].re().to_double() == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("qexp_taylor: zero form and short form") {
  QExpansion z;
  z.coeffs.assign(3, {Rational(0)});
  BigComplex q0(Rational(1, 10), 128);
  ComplexSeries s = qexp_taylor(z, q0, 4);
  for (int i = 0; i < 4; ++i) CHECK(s[i].is_zero());

  QExpansion shorty;
  shorty.coeffs.assign(5, {Rational(1)});
  CHECK_THROWS_AS(qexp_taylor(shorty, q0, 4), InsufficientTerms);
}

TEST_CASE("qexp_taylor handles cyclotomic coefficients") {
  // f = (zeta_4) q = i q: embedded constant term at q0 should be i*q0
  QExpansion f;
  f.N = 4;
  f.h = 1;
  f.coeffs.assign(60, {Rational(0)});
  f.coeffs[1] = {Rational(0), Rational(1)};
  BigComplex q0(Rational(1, 50), 128);
  ComplexSeries s = qexp_taylor(f, q0, 1);
  CHECK(s[0].re().to_double() == doctest::Approx(0.0).epsilon(1e-20));
  CHECK(s[0].im().to_double() == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("uniformizer_taylor: J at a matching base point") {
  long prec = 300;
  BigComplex q0 = real_nome(1.0, prec);
  UniformizerSpec spec{UniformizerKind::J, Rational(1728)};
  ComplexSeries u = uniformizer_taylor(spec, q0, 1, 1, 4);
  CHECK(u[0].abs().to_double() < 1e-60);

  UniformizerSpec inv{UniformizerKind::ONE_OVER_J, Rational(1, 1728)};
  ComplexSeries v = uniformizer_taylor(inv, q0, 1, 1, 3);
  CHECK(v[0].abs().to_double() < 1e-60);
}

TEST_CASE("uniformizer_taylor: mismatched base raises") {
  BigComplex q0 = real_nome(1.0, 200);
  UniformizerSpec spec{UniformizerKind::J, Rational(5)};
  CHECK_THROWS_AS(uniformizer_taylor(spec, q0, 1, 1, 3), BasePointMismatch);
}

TEST_CASE("hecke_on_qexp: eigenform coefficients of level 11") {
  QExpansion f = level11_form(60);
  // a_1..a_7 = 1, -2, -1, 2, 1, 2, -2
  CHECK(f.rational_coeff(1) == 1);
  CHECK(f.rational_coeff(2) == -2);
  CHECK(f.rational_coeff(3) == -1);
  CHECK(f.rational_coeff(5) == 1);

  QExpansion t2 = hecke_on_qexp(f, 2);
  for (long n = 1; n < t2.n_terms(); ++n)
    CHECK(t2.rational_coeff(n) == Rational(-2) * f.rational_coeff(n));

  QExpansion zero;
  zero.coeffs.assign(10, {Rational(0)});
  CHECK(hecke_on_qexp(zero, 2).is_zero());
}

TEST_CASE("hecke operators commute on truncations") {
  QExpansion f = level11_form(120);
  QExpansion a = hecke_on_qexp(hecke_on_qexp(f, 2), 3);
  QExpansion b = hecke_on_qexp(hecke_on_qexp(f, 3), 2);
  long L = std::min(a.n_terms(), b.n_terms());
  for (long n = 0; n < L; ++n) CHECK(a.rational_coeff(n) == b.rational_coeff(n));
}

TEST_CASE("hecke_matrix_from_basis: single eigenform") {
  QExpansion f = level11_form(60);
  auto A2 = hecke_matrix_from_basis({f}, 2);
  CHECK(A2 == std::vector<std::vector<Rational>>{{Rational(-2)}});
  auto A3 = hecke_matrix_from_basis({f}, 3);
  CHECK(A3 == std::vector<std::vector<Rational>>{{Rational(-1)}});
  auto A7 = hecke_matrix_from_basis({f}, 7);
  CHECK(A7 == std::vector<std::vector<Rational>>{{Rational(-2)}});
}

TEST_CASE("hecke_matrix_from_basis: rank and verification failures") {
  QExpansion f = level11_form(60);
  QExpansion g = f;
  for (auto& c : g.coeffs) c[0] *= 2; // dependent second basis vector
  CHECK_THROWS_AS(hecke_matrix_from_basis({f, g}, 2), RankDeficient);

  QExpansion bad = f;
  bad.coeffs[40][0] += 1; // corrupt a late coefficient
  CHECK_THROWS_AS(hecke_matrix_from_basis({bad}, 2), VerificationFailed);
}
