// Offline generator for classical modular polynomial fixtures.
//
// Method: the roots of Phi_p(X, j(q)) are j(q^p) and j(zeta_p^i q^{1/p});
// the power sums of that multiset are the integer q-series
//   s_k = j(q^p)^k + p * U_p(j^k),   U_p(sum a_n q^n) = sum a_{pn} q^n.
// Newton's identities convert power sums to elementary symmetric functions,
// each of which is a polynomial in j recovered by peeling principal parts.
//
// Exactness is tracked per series as a window [val, cap] of exponents whose
// coefficients are known exactly; window caps propagate honestly through
// products so the final assertions prove the output coefficients exact.

#include <gmpxx.h>

#include <cassert>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

using Integer = mpz_class;

struct LSeries {
  long val = 0;  // exponent of the first stored coefficient
  long cap = -1; // exponents <= cap are exact
  std::vector<Integer> c; // c[i] multiplies q^(val+i), stored through cap

  Integer at(long e) const {
    if (e < val || e > cap) return 0;
    return c[static_cast<size_t>(e - val)];
  }
};

LSeries mul(const LSeries& a, const LSeries& b) {
  LSeries r;
  r.val = a.val + b.val;
  r.cap = std::min(a.val + b.cap, b.val + a.cap);
  if (r.cap < r.val) { std::fprintf(stderr, "empty window in mul\n"); std::exit(1); }
  r.c.assign(static_cast<size_t>(r.cap - r.val + 1), Integer(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    long ea = a.val + static_cast<long>(i);
    for (size_t j = 0; j < b.c.size(); ++j) {
      long e = ea + b.val + static_cast<long>(j);
      if (e > r.cap) break;
      r.c[static_cast<size_t>(e - r.val)] += a.c[i] * b.c[j];
    }
  }
  return r;
}

LSeries add(const LSeries& a, const LSeries& b) {
  LSeries r;
  r.val = std::min(a.val, b.val);
  r.cap = std::min(a.cap, b.cap);
  r.c.assign(static_cast<size_t>(r.cap - r.val + 1), Integer(0));
  for (long e = r.val; e <= r.cap; ++e) r.c[static_cast<size_t>(e - r.val)] = a.at(e) + b.at(e);
  return r;
}

LSeries scale(const LSeries& a, const Integer& s) {
  LSeries r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

// U_p: keep coefficients at exponents divisible by p
LSeries u_p(const LSeries& a, long p) {
  LSeries r;
  long lo = (a.val >= 0) ? (a.val + p - 1) / p : -((-a.val) / p);
  r.val = lo;
  r.cap = (a.cap >= 0) ? a.cap / p : -((-a.cap + p - 1) / p);
  r.c.assign(static_cast<size_t>(r.cap - r.val + 1), Integer(0));
  for (long e = r.val; e <= r.cap; ++e) r.c[static_cast<size_t>(e - r.val)] = a.at(e * p);
  return r;
}

// substitute q -> q^p
LSeries stretch(const LSeries& a, long p, long cap_limit) {
  LSeries r;
  r.val = a.val * p;
  r.cap = std::min(a.cap * p + (p - 1), cap_limit);
  r.c.assign(static_cast<size_t>(r.cap - r.val + 1), Integer(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    long e = (a.val + static_cast<long>(i)) * p;
    if (e > r.cap) break;
    r.c[static_cast<size_t>(e - r.val)] = a.c[i];
  }
  return r;
}

// j(q) = E4(q)^3 / Delta(q) as an exact integer Laurent series, exponents
// -1 .. terms-2
LSeries j_series(long terms) {
  long n = terms;
  // Euler function a(q), pentagonal numbers
  std::vector<Integer> a(static_cast<size_t>(n), Integer(0));
  a[0] = 1;
  for (long k = 1;; ++k) {
    long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
    if (g1 >= n) break;
    long s = (k % 2 == 1) ? -1 : 1;
    a[static_cast<size_t>(g1)] += s;
    if (g2 < n) a[static_cast<size_t>(g2)] += s;
  }
  // E4 = 1 + 240 sum sigma_3(m) q^m
  std::vector<Integer> e4(static_cast<size_t>(n), Integer(0));
  e4[0] = 1;
  for (long m = 1; m < n; ++m) {
    Integer s3 = 0;
    for (long d = 1; d * d <= m; ++d) {
      if (m % d) continue;
      s3 += Integer(d) * d * d;
      long e = m / d;
      if (e != d) s3 += Integer(e) * e * e;
    }
    e4[static_cast<size_t>(m)] = 240 * s3;
  }
  auto pmul = [&](const std::vector<Integer>& x, const std::vector<Integer>& y) {
    std::vector<Integer> r(static_cast<size_t>(n), Integer(0));
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (size_t j = 0; i + j < static_cast<size_t>(n); ++j) r[i + j] += x[i] * y[j];
    }
    return r;
  };
  // a^24 = a^16 * a^8, then invert the unit series
  std::vector<Integer> p2 = pmul(a, a);
  std::vector<Integer> p4 = pmul(p2, p2);
  std::vector<Integer> p8 = pmul(p4, p4);
  std::vector<Integer> p16 = pmul(p8, p8);
  std::vector<Integer> a24 = pmul(p16, p8);
  std::vector<Integer> inv(static_cast<size_t>(n), Integer(0));
  inv[0] = 1;
  for (long k = 1; k < n; ++k) {
    Integer acc = 0;
    for (long i = 1; i <= k; ++i) acc += a24[static_cast<size_t>(i)] * inv[static_cast<size_t>(k - i)];
    inv[static_cast<size_t>(k)] = -acc;
  }
  // j = q^-1 * E4^3 * a^-24
  std::vector<Integer> e43 = pmul(pmul(e4, e4), e4);
  std::vector<Integer> num = pmul(e43, inv);
  LSeries j;
  j.val = -1;
  j.cap = n - 2;
  j.c = std::move(num);
  return j;
}

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: gen_modpoly <p> <outfile>\n");
    return 1;
  }
  long p = std::atol(argv[1]);
  const char* outfile = argv[2];
  long d = p + 1;

  // window sizing: the Newton product e_{k-i} * s_i is exact through q^m only
  // when e_{k-i} is exact through q^(m + p*i), so e_k needs cap ~ 3 + p*(d-k)
  // and every s_i needs cap >= 3 + p*(d+1)
  long hi_needed = p * (d + 1) + 8;
  long jterms = p * hi_needed + p * d + 2 * d + 16;
  LSeries j = j_series(jterms);

  // powers of j
  std::vector<LSeries> jpow(static_cast<size_t>(d) + 1);
  {
    LSeries one;
    one.val = 0;
    one.cap = j.cap;
    one.c.assign(static_cast<size_t>(one.cap + 1), Integer(0));
    one.c[0] = 1;
    jpow[0] = one;
  }
  for (long k = 1; k <= d; ++k) jpow[static_cast<size_t>(k)] = mul(jpow[static_cast<size_t>(k - 1)], j);

  LSeries jp = stretch(j, p, hi_needed + p * d + p);
  std::vector<LSeries> jppow(static_cast<size_t>(d) + 1);
  {
    LSeries one;
    one.val = 0;
    one.cap = jp.cap;
    one.c.assign(static_cast<size_t>(one.cap + 1), Integer(0));
    one.c[0] = 1;
    jppow[0] = one;
  }
  for (long k = 1; k <= d; ++k) jppow[static_cast<size_t>(k)] = mul(jppow[static_cast<size_t>(k - 1)], jp);

  // power sums s_k = j(q^p)^k + p * U_p(j^k)
  std::vector<LSeries> s(static_cast<size_t>(d) + 1);
  for (long k = 1; k <= d; ++k) {
    LSeries up = scale(u_p(jpow[static_cast<size_t>(k)], p), p);
    s[static_cast<size_t>(k)] = add(jppow[static_cast<size_t>(k)], up);
    if (s[static_cast<size_t>(k)].cap < hi_needed - p) {
      std::fprintf(stderr, "power sum %ld window too small (cap %ld)\n", k, s[static_cast<size_t>(k)].cap);
      return 1;
    }
  }

  // Newton's identities: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} s_i
  std::vector<LSeries> e(static_cast<size_t>(d) + 1);
  e[0] = jpow[0]; // 1
  for (long k = 1; k <= d; ++k) {
    LSeries acc;
    bool started = false;
    for (long i = 1; i <= k; ++i) {
      LSeries term = mul(e[static_cast<size_t>(k - i)], s[static_cast<size_t>(i)]);
      if (i % 2 == 0) term = scale(term, Integer(-1));
      acc = started ? add(acc, term) : term;
      started = true;
    }
    for (auto& x : acc.c) {
      if (x % k != 0) { std::fprintf(stderr, "newton division failed at e_%ld\n", k); return 1; }
      x /= k;
    }
    e[static_cast<size_t>(k)] = acc;
    if (acc.cap < 3) { std::fprintf(stderr, "e_%ld window too small\n", k); return 1; }
  }

  // peel each e_k into a polynomial in j
  // coeffs[k][m] = coefficient of j^m in e_k
  std::vector<std::vector<Integer>> epoly(static_cast<size_t>(d) + 1,
                                          std::vector<Integer>(static_cast<size_t>(d) + 1, Integer(0)));
  for (long k = 1; k <= d; ++k) {
    LSeries r = e[static_cast<size_t>(k)];
    for (long m = d; m >= 1; --m) {
      Integer cm = r.at(-m);
      if (cm == 0) continue;
      epoly[static_cast<size_t>(k)][static_cast<size_t>(m)] = cm;
      r = add(r, scale(jpow[static_cast<size_t>(m)], -cm));
    }
    epoly[static_cast<size_t>(k)][0] = r.at(0);
    // the remainder must vanish identically on the checked window
    for (long x = -d; x <= std::min(r.cap, static_cast<long>(3)); ++x) {
      if (x == 0) continue;
      if (r.at(x) != 0) { std::fprintf(stderr, "nonzero remainder in e_%ld at q^%ld\n", k, x); return 1; }
    }
  }

  // Phi(X, Y) = X^d + sum_k (-1)^k e_k(Y) X^(d-k)
  std::map<std::pair<long, long>, Integer> phi;
  phi[{d, 0}] = 1;
  for (long k = 1; k <= d; ++k)
    for (long m = 0; m <= d; ++m) {
      Integer c = epoly[static_cast<size_t>(k)][static_cast<size_t>(m)];
      if (k % 2 == 1) c = -c;
      if (c != 0) phi[{d - k, m}] += c;
    }
  for (auto it = phi.begin(); it != phi.end();) {
    if (it->second == 0) it = phi.erase(it);
    else ++it;
  }

  // validate symmetry
  for (const auto& [ij, c] : phi) {
    auto sym = phi.find({ij.second, ij.first});
    if (sym == phi.end() || sym->second != c) {
      std::fprintf(stderr, "symmetry check failed at [%ld,%ld]\n", ij.first, ij.second);
      return 1;
    }
  }
  // validate the Eichler-Shimura congruence Phi = (X^p - Y)(X - Y^p) mod p
  {
    std::map<std::pair<long, long>, Integer> es;
    es[{p + 1, 0}] = 1;
    es[{p, p}] = -1;
    es[{1, 1}] = -1;
    es[{0, p + 1}] = 1;
    std::map<std::pair<long, long>, Integer> diff = phi;
    for (const auto& [ij, c] : es) diff[ij] -= c;
    for (const auto& [ij, c] : diff) {
      if (c % p != 0) {
        std::fprintf(stderr, "congruence check failed at [%ld,%ld]\n", ij.first, ij.second);
        return 1;
      }
    }
  }

  FILE* out = std::fopen(outfile, "w");
  if (!out) { std::perror("fopen"); return 1; }
  std::fprintf(out, "# classical modular polynomial, level %ld\n", p);
  std::fprintf(out, "# generated by tools/gen_modpoly via power sums of j(q^p) and U_p(j^k)\n");
  std::fprintf(out, "# terms with i >= j only; symmetric completion implied;\n");
  std::fprintf(out, "# the monic leading term [%ld,0] 1 is implied and not listed\n", d);
  long written = 0;
  for (const auto& [ij, c] : phi) {
    if (ij.first < ij.second) continue;
    if (ij.first == d && ij.second == 0) continue; // implied monic leading term
    std::fprintf(out, "[%ld,%ld] %s\n", ij.first, ij.second, c.get_str().c_str());
    ++written;
  }
  std::fclose(out);
  std::fprintf(stderr, "wrote %ld terms to %s\n", written, outfile);
  return 0;
}
