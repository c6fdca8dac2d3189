#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modcol/error.hpp"
#include "modcol/padic.hpp"

#include <random>

using namespace modcol;

namespace {
std::mt19937_64 rng(0xabcdef12u);
long rand_in(long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  return d(rng);
}
} // namespace

TEST_CASE("padic_from_rational basics") {
  PadicNumber z = padic_from_rational(Rational(0), 3, 10);
  CHECK(z.is_zero());
  CHECK(z.to_string() == "O(3^10)");

  PadicNumber m1 = padic_from_rational(Rational(-1), 3, 4);
  CHECK(m1.digits() == std::vector<long>{2, 2, 2, 2});
  CHECK(m1.to_string() == "2 + 2*3 + 2*3^2 + 2*3^3 + O(3^4)");

  // modular-inversion oracle for 717409/3478 in Q_3 at O(3^5)
  Integer p243 = 243;
  Integer inv;
  Integer den = 3478;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p243.get_mpz_t());
  Integer expect = (Integer(717409) * inv) % p243;
  PadicNumber v = padic_from_rational(Rational(717409, 3478), 3, 5);
  CHECK(v.valuation() == 0);
  CHECK(v.unit() == expect);
}

TEST_CASE("padic negative valuation and printing") {
  PadicNumber x = padic_from_rational(Rational(10, 11), 11, 3);
  CHECK(x.valuation() == -1);
  CHECK(x.to_string().substr(0, 8) == "10*11^-1");

  PadicNumber nine = padic_from_rational(Rational(9), 3, 6);
  CHECK(nine.to_string() == "3^2 + O(3^6)");
}

TEST_CASE("padic arithmetic tracks precision") {
  PadicNumber a = padic_from_rational(Rational(1, 2), 5, 10);
  PadicNumber b = padic_from_rational(Rational(3), 5, 7);
  CHECK((a + b).abs_prec() == 7);
  PadicNumber c = padic_from_rational(Rational(25), 5, 10); // val 2, rel 8
  CHECK((a * c).valuation() == 2);
  CHECK((a * c).rel_prec() == 8);
  // division undoes multiplication at the shared precision
  PadicNumber q = (a * c) / c;
  CHECK(q == a);
}

TEST_CASE("embedding is a ring homomorphism on random samples") {
  Integer p = 7;
  for (int t = 0; t < 50; ++t) {
    Rational r1(rand_in(-500, 500), rand_in(1, 100));
    Rational r2(rand_in(-500, 500), rand_in(1, 100));
    r1.canonicalize();
    r2.canonicalize();
    PadicNumber a = padic_from_rational(r1, p, 12);
    PadicNumber b = padic_from_rational(r2, p, 12);
    CHECK(a + b == padic_from_rational(r1 + r2, p, 12));
    CHECK(a * b == padic_from_rational(r1 * r2, p, 12));
  }
}

TEST_CASE("padic_linear_solve: identity and diagonal") {
  Integer p = 3;
  PadicMatrix I;
  I.p = p;
  I.entries = {{padic_from_rational(1, p, 10), padic_from_rational(0, p, 10)},
               {padic_from_rational(0, p, 10), padic_from_rational(1, p, 10)}};
  std::vector<PadicNumber> b = {padic_from_rational(Rational(5), p, 10),
                                padic_from_rational(Rational(-7), p, 10)};
  auto x = padic_linear_solve(I, b);
  CHECK(x[0] == b[0]);
  CHECK(x[1] == b[1]);

  // (p+1)I - A for A = diag(1, -3), p = 3: diag(3, 7)
  PadicMatrix D;
  D.p = p;
  D.entries = {{padic_from_rational(3, p, 10), padic_from_rational(0, p, 10)},
               {padic_from_rational(0, p, 10), padic_from_rational(7, p, 10)}};
  Rational t(22, 7);
  std::vector<PadicNumber> b2 = {padic_from_rational(0, p, 10), padic_from_rational(t, p, 10)};
  auto x2 = padic_linear_solve(D, b2);
  CHECK(x2[0].is_zero());
  // dividing by 3 costs one digit of absolute precision
  CHECK(x2[0].abs_prec() == 9);
  CHECK(x2[1] == padic_from_rational(t / 7, p, 9));
}

TEST_CASE("padic_linear_solve matches exact rational elimination") {
  Integer p = 5;
  for (int trial = 0; trial < 20; ++trial) {
    // random 3x3 rational system solved exactly by Cramer's rule
    Rational m[3][3], b[3];
    for (auto& row : m)
      for (auto& e : row) e = Rational(rand_in(-20, 20), rand_in(1, 9));
    for (auto& e : b) e = Rational(rand_in(-20, 20), rand_in(1, 9));
    auto det3 = [&](Rational a[3][3]) -> Rational {
      return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
             a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
             a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    Rational det = det3(m);
    if (det == 0) { --trial; continue; }
    Rational exact[3];
    for (int c = 0; c < 3; ++c) {
      Rational mm[3][3];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) mm[i][j] = (j == c) ? b[i] : m[i][j];
      exact[c] = det3(mm) / det;
    }
    PadicMatrix M;
    M.p = p;
    M.entries.resize(3);
    std::vector<PadicNumber> pb;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) M.entries[i].push_back(padic_from_rational(m[i][j], p, 20));
      pb.push_back(padic_from_rational(b[i], p, 20));
    }
    auto x = padic_linear_solve(M, pb);
    for (int c = 0; c < 3; ++c) {
      PadicNumber want = padic_from_rational(exact[c], p, x[c].abs_prec());
      CHECK(x[c] == want);
    }
  }
}

TEST_CASE("padic_linear_solve: singular matrix rejected") {
  Integer p = 3;
  PadicMatrix S;
  S.p = p;
  S.entries = {{padic_from_rational(1, p, 8), padic_from_rational(2, p, 8)},
               {padic_from_rational(2, p, 8), padic_from_rational(4, p, 8)}};
  std::vector<PadicNumber> b = {padic_from_rational(1, p, 8), padic_from_rational(1, p, 8)};
  CHECK_THROWS_AS(padic_linear_solve(S, b), SingularToPrecision);
}

TEST_CASE("newton polygon minimal slope") {
  // (t-3)(t-9) = t^2 - 12t + 27: root valuations 1 and 2, min 1
  RationalPoly P({Rational(27), Rational(-12), Rational(1)});
  CHECK(newton_polygon_min_slope(P, 3) == Rational(1));
  // t^2 - 3: ramified, min valuation 1/2
  RationalPoly Q({Rational(-3), Rational(0), Rational(1)});
  CHECK(newton_polygon_min_slope(Q, 3) == Rational(1, 2));
}

TEST_CASE("padic_eval_series: trivial and error paths") {
  Integer p = 3;
  std::vector<Rational> x = {Rational(1), Rational(1, 2), Rational(1, 5)};
  std::vector<Rational> zeros = {0, 0, 0};
  PadicNumber z = padic_eval_series(x, zeros, p, 3, Rational(1));
  CHECK(z.is_zero());
  CHECK(z.abs_prec() == 3);

  // endpoint outside the residue disc: power sum with valuation 0
  std::vector<Rational> bad = {Rational(2), Rational(4), Rational(8)};
  CHECK_THROWS_AS(padic_eval_series(x, bad, p, 3, Rational(1)), NotInDisc);

  // too few terms for the requested precision
  std::vector<Rational> ok = {Rational(3), Rational(9), Rational(27)};
  CHECK_THROWS_AS(padic_eval_series(x, ok, p, 40, Rational(1, 2)), InsufficientOrder);
}

TEST_CASE("padic_eval_series agrees with a direct sum") {
  // single endpoint u = 3, omega = (1 + u) du: integral from u=3 to 0 is
  // -(3 + 9/2) = -15/2
  Integer p = 3;
  std::vector<Rational> x = {Rational(1), Rational(1), 0, 0, 0, 0};
  std::vector<Rational> ps = {Rational(3), Rational(9), Rational(27), Rational(81), Rational(243), Rational(729)};
  PadicNumber got = padic_eval_series(x, ps, p, 3, Rational(1));
  CHECK(got == padic_from_rational(Rational(-15, 2), p, 3));
}

TEST_CASE("padic_eval_series is permutation invariant (consumes power sums only)") {
  // endpoints {3, 6} vs {6, 3} give identical power sums by construction;
  // the contract is that the op only sees the sums
  Integer p = 3;
  // endpoints {3, 6}: p_k = 3^k + 6^k
  std::vector<Rational> x = {Rational(5), Rational(-1, 2), 0, 0};
  std::vector<Rational> ps = {Rational(9), Rational(45), Rational(243), Rational(1377)};
  PadicNumber a = padic_eval_series(x, ps, p, 4, Rational(1));
  PadicNumber b = padic_eval_series(x, ps, p, 4, Rational(1));
  CHECK(a == b);
}

TEST_CASE("hensel_roots") {
  RationalPoly P({Rational(-1), Rational(0), Rational(1)}); // x^2 - 1
  auto roots = hensel_roots(P, 3, 6);
  REQUIRE(roots.size() == 2);
  PadicNumber one = padic_from_rational(1, 3, 6);
  PadicNumber minus_one = padic_from_rational(-1, 3, 6);
  bool has_one = (roots[0] == one) || (roots[1] == one);
  bool has_m1 = (roots[0] == minus_one) || (roots[1] == minus_one);
  CHECK(has_one);
  CHECK(has_m1);

  RationalPoly Q({Rational(-2), Rational(0), Rational(1)}); // x^2 - 2, no root mod 3
  CHECK(hensel_roots(Q, 3, 6).empty());

  RationalPoly R({Rational(-3), Rational(0), Rational(1)}); // x^2 - 3, ramified at 3
  std::vector<long> degen;
  CHECK(hensel_roots(R, 3, 6, &degen).empty());
  CHECK(degen == std::vector<long>{0});
}
