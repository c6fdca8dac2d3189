#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modcol/bigcomplex.hpp"
#include "modcol/error.hpp"
#include "modcol/lattice.hpp"
#include "modcol/rational.hpp"
#include "modcol/series.hpp"

#include <complex>
#include <cstdint>
#include <random>

using namespace modcol;

namespace {

// deterministic RNG so the "random" property tests are reproducible
std::mt19937_64 rng(0x5eed1234u);

long rand_in(long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  return d(rng);
}

BigComplex embed(const Rational& r, long prec) { return BigComplex(r, prec); }

} // namespace

TEST_CASE("valuation basics") {
  CHECK(valuation(Integer(12), Integer(2)) == 2);
  CHECK(valuation(Integer(12), Integer(3)) == 1);
  CHECK(valuation(Rational(9, 2), Integer(3)) == 2);
  CHECK(valuation(Rational(1, 27), Integer(3)) == -3);
  CHECK_THROWS_AS(valuation(Rational(0), Integer(3)), Error);
}

TEST_CASE("bigfloat arithmetic and precision propagation") {
  BigFloat a(Rational(1, 3), 256);
  BigFloat b(2, 128);
  CHECK((a * b).prec_bits() == 128);
  BigFloat third(Rational(1, 3), 256);
  BigFloat err = (third * BigFloat(3, 256) - BigFloat(1, 256)).abs();
  CHECK(err < BigFloat(1, 256).mul_2exp(-250));
}

TEST_CASE("nome from tau") {
  // tau = i, h = 1: q = e^{-2 pi} is real positive
  BigComplex tau(BigFloat(0, 256), BigFloat(1, 256));
  BigComplex q = nome_from_tau(tau, 1);
  CHECK(q.im().abs().to_double() < 1e-70);
  CHECK(q.re().to_double() == doctest::Approx(std::exp(-2 * 3.14159265358979324)).epsilon(1e-10));
  // width h=2 takes a square root of the magnitude
  BigComplex q2 = nome_from_tau(tau, 2);
  CHECK((q2 * q2 - q).abs().to_double() < 1e-70);
}

TEST_CASE("lll: identity and scaled identity are fixed points") {
  IntLattice id;
  id.basis = {{1, 0}, {0, 1}};
  CHECK(lll_reduce(id).basis == id.basis);

  IntLattice s7;
  s7.basis = {{7, 0, 0}, {0, 7, 0}, {0, 0, 7}};
  CHECK(lll_reduce(s7).basis == s7.basis);
}

TEST_CASE("lll: dependent rows rejected") {
  IntLattice bad;
  bad.basis = {{1, 2}, {2, 4}};
  CHECK_THROWS_AS(lll_reduce(bad), DependentRows);
}

TEST_CASE("lll: first vector is shortest on random 2x2 bases") {
  // oracle: brute-force enumeration of coefficient box [-200, 200]^2
  for (int trial = 0; trial < 20; ++trial) {
    IntLattice lat;
    lat.basis = {{rand_in(-1000, 1000), rand_in(-1000, 1000)},
                 {rand_in(-1000, 1000), rand_in(-1000, 1000)}};
    Integer det = lat.basis[0][0] * lat.basis[1][1] - lat.basis[0][1] * lat.basis[1][0];
    if (det == 0) { --trial; continue; }
    IntLattice red = lll_reduce(lat);
    Integer got = red.basis[0][0] * red.basis[0][0] + red.basis[0][1] * red.basis[0][1];
    Integer best = 0;
    for (long a = -200; a <= 200; ++a)
      for (long b = -200; b <= 200; ++b) {
        if (a == 0 && b == 0) continue;
        Integer x = a * lat.basis[0][0] + b * lat.basis[1][0];
        Integer y = a * lat.basis[0][1] + b * lat.basis[1][1];
        Integer n = x * x + y * y;
        if (best == 0 || n < best) best = n;
      }
    CHECK(got == best);
  }
}

TEST_CASE("lll preserves the lattice (unimodular change of basis)") {
  for (int trial = 0; trial < 10; ++trial) {
    IntLattice lat;
    lat.basis = {{rand_in(-50, 50), rand_in(-50, 50), rand_in(-50, 50)},
                 {rand_in(-50, 50), rand_in(-50, 50), rand_in(-50, 50)},
                 {rand_in(-50, 50), rand_in(-50, 50), rand_in(-50, 50)}};
    auto det3 = [](const std::vector<std::vector<Integer>>& m) -> Integer {
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    Integer d = det3(lat.basis);
    if (d == 0) { --trial; continue; }
    IntLattice red = lll_reduce(lat);
    Integer dr = det3(red.basis);
    CHECK(abs(dr) == abs(d));
  }
}

TEST_CASE("algdep: exact rational") {
  BigComplex z(Rational(1, 2), 256);
  IntPoly P = algdep(z, 1, 64);
  CHECK(P.coeffs == std::vector<Integer>{-1, 2});
}

TEST_CASE("algdep: sqrt(2)") {
  BigFloat two(2, 300);
  BigComplex z(two.sqrt(), BigFloat(0, 300));
  IntPoly P = algdep(z, 2, 64);
  CHECK(P.coeffs == std::vector<Integer>{-2, 0, 1});
}

TEST_CASE("algdep: 717409/(2*37*47) at 200 bits") {
  BigComplex z(Rational(717409, 2 * 37 * 47), 200);
  IntPoly P = algdep(z, 1, 50);
  CHECK(P.coeffs == std::vector<Integer>{-717409, 3478});
}

TEST_CASE("algdep: garbage input raises NoRelationFound") {
  // pi is transcendental; degree-2 search with a tight height bound must fail
  BigComplex z(BigFloat::pi(300), BigFloat(0, 300));
  CHECK_THROWS_AS(algdep(z, 2, 20), NoRelationFound);
}

TEST_CASE("rational_reconstruct: paper values") {
  CHECK(rational_reconstruct(BigComplex(200), 50) == Rational(0));
  CHECK(rational_reconstruct(embed(Rational(-9317), 200), 50) == Rational(-9317));
  Rational tiny(-1, 156800); // -1/(2^7 * 5^2 * 7^2)
  CHECK(rational_reconstruct(embed(tiny, 200), 50) == tiny);
}

TEST_CASE("rational_reconstruct: rejects genuinely complex input") {
  BigComplex z(BigFloat(1, 200), BigFloat(1, 200));
  CHECK_THROWS_AS(rational_reconstruct(z, 50), NotReal);
}

TEST_CASE("rational_reconstruct round-trips random rationals") {
  for (int trial = 0; trial < 100; ++trial) {
    Integer num, den;
    num = Integer(rand_in(-(1L << 31), 1L << 31)) * Integer(rand_in(1, 1L << 31));
    den = Integer(rand_in(1, 1L << 31)) * Integer(rand_in(1, 1L << 31));
    Rational r(num, den);
    r.canonicalize();
    CHECK(rational_reconstruct(embed(r, 300), 75) == r);
  }
}

TEST_CASE("power sums: hand-checked") {
  RationalPoly P({Rational(6), Rational(-5), Rational(1)}); // (t-2)(t-3)
  auto ps = power_sums_from_poly(P, 2);
  CHECK(ps == std::vector<Rational>{Rational(5), Rational(13)});

  RationalPoly Z({Rational(0), Rational(0), Rational(0), Rational(1)}); // t^3
  for (const auto& v : power_sums_from_poly(Z, 5)) CHECK(v == 0);
}

TEST_CASE("power sums match complex root-finding oracle") {
  // oracle: Durand-Kerner root finder in double complex, sums rounded
  for (int trial = 0; trial < 40; ++trial) {
    int d = static_cast<int>(rand_in(2, 5));
    std::vector<Rational> c(static_cast<size_t>(d) + 1);
    for (int i = 0; i < d; ++i) c[static_cast<size_t>(i)] = rand_in(-20, 20);
    c[static_cast<size_t>(d)] = 1;
    RationalPoly P(c);

    std::vector<std::complex<double>> roots(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) roots[static_cast<size_t>(i)] = std::pow(std::complex<double>(0.4, 0.9), i + 1);
    auto evald = [&](std::complex<double> x) {
      std::complex<double> acc = 0;
      for (int i = d; i >= 0; --i) acc = acc * x + c[static_cast<size_t>(i)].get_d();
      return acc;
    };
    for (int iter = 0; iter < 500; ++iter) {
      for (int i = 0; i < d; ++i) {
        std::complex<double> denom = 1;
        for (int j = 0; j < d; ++j)
          if (j != i) denom *= roots[static_cast<size_t>(i)] - roots[static_cast<size_t>(j)];
        roots[static_cast<size_t>(i)] -= evald(roots[static_cast<size_t>(i)]) / denom;
      }
    }
    auto ps = power_sums_from_poly(P, 4);
    for (int k = 1; k <= 4; ++k) {
      std::complex<double> s = 0;
      for (auto& r : roots) s += std::pow(r, k);
      CHECK(ps[static_cast<size_t>(k - 1)].get_d() == doctest::Approx(s.real()).epsilon(1e-5));
    }
  }
}

TEST_CASE("poly_from_complex_roots: conjugate pair and single root") {
  long prec = 256;
  std::vector<BigComplex> pair = {BigComplex(BigFloat(1, prec), BigFloat(1, prec)),
                                  BigComplex(BigFloat(1, prec), BigFloat(-1, prec))};
  RationalPoly P = poly_from_complex_roots(pair, 40);
  CHECK(P.coeffs == std::vector<Rational>{Rational(2), Rational(-2), Rational(1)});

  std::vector<BigComplex> one = {BigComplex(2, prec)};
  RationalPoly Q = poly_from_complex_roots(one, 40);
  CHECK(Q.coeffs == std::vector<Rational>{Rational(-2), Rational(1)});
}

TEST_CASE("series: ring identities at truncation order") {
  BigComplex model(256);
  auto mk = [&](std::initializer_list<double> vals) {
    std::vector<BigComplex> c;
    for (double v : vals) {
      BigFloat x(0, 256);
      mpfr_set_d(x.raw(), v, MPFR_RNDN);
      c.emplace_back(x, BigFloat(0, 256));
    }
    return ComplexSeries(std::move(c), "t");
  };
  ComplexSeries f = mk({1.0, 2.0, 3.0, 4.0});
  ComplexSeries g = mk({2.0, -1.0, 0.5, 7.0});
  ComplexSeries h = mk({-3.0, 1.0, 1.0, 2.0});

  ComplexSeries lhs = (f * g) * h;
  ComplexSeries rhs = f * (g * h);
  for (int i = 0; i < lhs.order(); ++i)
    CHECK((lhs[i] - rhs[i]).abs().to_double() == doctest::Approx(0.0).epsilon(1e-60));

  ComplexSeries finv = f.inverse();
  ComplexSeries prod = f * finv;
  CHECK((prod[0] - BigComplex(1, 256)).abs().to_double() == doctest::Approx(0.0));
  for (int i = 1; i < prod.order(); ++i)
    CHECK(prod[i].abs().to_double() == doctest::Approx(0.0).epsilon(1e-60));
}

TEST_CASE("series: order shrinks to min under multiplication") {
  RationalSeries a = RationalSeries::constant(Rational(1), 5);
  RationalSeries b = RationalSeries::constant(Rational(1), 3);
  CHECK((a * b).order() == 3);
  CHECK((a + b).order() == 3);
}

TEST_CASE("series: derivative and composition") {
  // f = 1 + t + t^2 + t^3 over Q
  RationalSeries f({Rational(1), Rational(1), Rational(1), Rational(1)}, "t");
  RationalSeries df = f.derivative();
  CHECK(df.order() == 3);
  CHECK(df[0] == 1);
  CHECK(df[1] == 2);
  CHECK(df[2] == 3);

  // g = 2t, f(g) = 1 + 2t + 4t^2 + 8t^3 truncated at order 4
  RationalSeries g({Rational(0), Rational(2), Rational(0), Rational(0)}, "t");
  RationalSeries fg = f.compose(g);
  CHECK(fg[0] == 1);
  CHECK(fg[1] == 2);
  CHECK(fg[2] == 4);
  CHECK(fg[3] == 8);

  CHECK_THROWS_AS(f.compose(f), Error); // nonzero constant term
}

TEST_CASE("series: mul_linear agrees with full multiplication") {
  RationalSeries f({Rational(1), Rational(-2), Rational(5), Rational(7)}, "t");
  RationalSeries lin({Rational(3), Rational(4), Rational(0), Rational(0)}, "t");
  RationalSeries a = f.mul_linear(Rational(3), Rational(4));
  RationalSeries b = f * lin;
  for (int i = 0; i < 4; ++i) CHECK(a[i] == b[i]);
}
