#include "modcol/hecke.hpp"

#include "modcol/error.hpp"
#include "modcol/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace modcol {

IntMat imat_mul(const IntMat& x, const IntMat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

namespace {

long mod(long x, long n) {
  long r = x % n;
  return r < 0 ? r + n : r;
}

IntMat imat_mod(const IntMat& m, long n) {
  return {mod(m[0], n), mod(m[1], n), mod(m[2], n), mod(m[3], n)};
}

long encode(const IntMat& m, long n) { return ((m[0] * n + m[1]) * n + m[2]) * n + m[3]; }

// closure of the generator set in SL_2(Z/N), as a sorted vector of codes
std::vector<long> subgroup_closure(const GroupDescriptor& desc) {
  long n = desc.N;
  std::set<long> seen;
  std::vector<IntMat> frontier;
  IntMat id{1, 0, 0, 1};
  seen.insert(encode(id, n));
  frontier.push_back(id);
  std::vector<IntMat> gens;
  for (const auto& g : desc.generators_mod_N) gens.push_back(imat_mod(g, n));
  // -I is required in the subgroup
  gens.push_back(imat_mod(IntMat{-1, 0, 0, -1}, n));
  while (!frontier.empty()) {
    IntMat m = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      IntMat prod = imat_mod(imat_mul(m, g), n);
      if (seen.insert(encode(prod, n)).second) frontier.push_back(prod);
    }
  }
  return std::vector<long>(seen.begin(), seen.end());
}

} // namespace

bool membership(const GroupDescriptor& desc, const IntMat& m) {
  long n = desc.N;
  if (n == 1) return true;
  IntMat r = imat_mod(m, n);
  switch (desc.family) {
    case CurveFamily::GAMMA0:
    case CurveFamily::GAMMA0_PLUS:
      // integral elements of the (extended) group are exactly Gamma_0(N)
      return r[2] == 0;
    case CurveFamily::NS_CARTAN_PLUS: {
      long eps = mod(desc.epsilon, n);
      bool cartan = (r[0] == r[3]) && (r[1] == mod(eps * r[2], n));
      bool twist = (mod(r[0] + r[3], n) == 0) && (mod(r[1] + eps * r[2], n) == 0);
      return cartan || twist;
    }
    case CurveFamily::GENERIC_H: {
      if (!desc.closure_cache)
        desc.closure_cache = std::make_shared<std::vector<long>>(subgroup_closure(desc));
      const auto& cl = *desc.closure_cache;
      return std::binary_search(cl.begin(), cl.end(), encode(r, n));
    }
  }
  return false;
}

CosetSystem gamma0_coset_reps(long p) {
  CosetSystem sys;
  sys.alpha = GL2Q{Rational(1), Rational(0), Rational(0), Rational(p)};
  for (long i = 0; i < p; ++i) sys.reps.push_back({1, i, 0, p});
  sys.reps.push_back({p, 0, 0, 1});
  return sys;
}

namespace {

// lift a matrix M given mod L to SL_2(Z)
IntMat sl2_lift(const IntMat& m, long L) {
  Integer c(mod(m[2], L)), d(mod(m[3], L));
  if (c == 0) c = L;
  // adjust d by multiples of L until gcd(c, d) = 1 (det = 1 mod L makes
  // gcd(c, d, L) = 1, so a suitable residue exists)
  for (long k = 0;; ++k) {
    Integer dd = d + k * Integer(L);
    Integer g;
    mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), dd.get_mpz_t());
    if (g == 1) { d = dd; break; }
    if (k > 8 * L) throw Error("Internal", "sl2 lift: no coprime bottom row found");
  }
  // x*d - y*c = 1
  Integer g, x, t;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), t.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
  Integer y = -t; // x*d + t*c = 1  =>  x*d - (-t)*c = 1
  // u*c + v*d = 1
  Integer u, v;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
  // kappa matches the top row to (a, b) mod L
  Integer a(mod(m[0], L)), b(mod(m[1], L));
  Integer kappa = ((a - x) * u + (b - y) * v) % L;
  Integer A = x + kappa * c, B = y + kappa * d;
  IntMat out{static_cast<long>(A.get_si()), static_cast<long>(B.get_si()),
             static_cast<long>(c.get_si()), static_cast<long>(d.get_si())};
  if (imat_det(out) != 1) throw Error("Internal", "sl2 lift: determinant is not 1");
  if (mod(out[0] - m[0], L) || mod(out[1] - m[1], L) || mod(out[2] - m[2], L) ||
      mod(out[3] - m[3], L))
    throw Error("Internal", "sl2 lift: congruence lost");
  return out;
}

IntMat gl2q_to_imat(const GL2Q& a) {
  auto to_long = [](const Rational& r) -> long {
    if (r.get_den() != 1) throw Error("Domain", "alpha must have integer entries");
    return static_cast<long>(r.get_num().get_si());
  };
  return {to_long(a.a), to_long(a.b), to_long(a.c), to_long(a.d)};
}

} // namespace

CosetSystem double_coset_reps(const GroupDescriptor& desc, long p, const GL2Q& alpha) {
  if (alpha.det() != Rational(p)) throw Error("Domain", "det(alpha) must equal p");
  long N = desc.N;
  if (std::gcd(p, N) != 1) throw BadPrime("p must be coprime to the level");
  IntMat alpha_i = gl2q_to_imat(alpha);
  // alpha mod N must land in H; the Cartan pattern test extends to
  // determinant-p matrices, so it can be checked directly for that family
  if (desc.family == CurveFamily::NS_CARTAN_PLUS && !membership(desc, alpha_i))
    throw Error("Domain", "alpha mod N is not in the subgroup");

  // Gamma^0(p) \ SL_2(Z): T^i for i < p, then S
  std::vector<IntMat> betas;
  for (long i = 0; i < p; ++i) betas.push_back({1, i, 0, 1});
  betas.push_back({0, -1, 1, 0});

  long L = N * p;
  CosetSystem sys;
  sys.alpha = alpha;
  for (const auto& beta : betas) {
    // target gamma: beta^-1 mod N (so gamma*beta = I in SL_2(Z/N), which is
    // in every H), upper-triangular (identity) mod p to stay in Gamma^0(p)
    IntMat binv_modN = imat_mod(IntMat{beta[3], -beta[1], -beta[2], beta[0]}, N);
    IntMat target;
    for (int k = 0; k < 4; ++k) {
      // CRT entrywise: x = binv mod N, x = I mod p
      long idk = (k == 0 || k == 3) ? 1 : 0;
      long x = 0;
      for (x = 0; x < L; ++x)
        if (mod(x - binv_modN[static_cast<size_t>(k)], N) == 0 && mod(x - idk, p) == 0) break;
      target[static_cast<size_t>(k)] = x;
    }
    IntMat gamma = sl2_lift(target, L);
    if (mod(gamma[1], p) != 0)
      throw SearchExhausted("no Gamma^0(p) element restoring admissibility");
    IntMat beta_prime = imat_mul(gamma, beta);
    if (!membership(desc, beta_prime))
      throw SearchExhausted("restored representative is not in the subgroup");
    sys.reps.push_back(imat_mul(alpha_i, beta_prime));
  }

  // validate: det = p, pairwise left-inequivalence under Gamma_H
  for (const auto& r : sys.reps)
    if (imat_det(r) != p) throw VerificationFailed("double coset rep with wrong determinant");
  for (size_t i = 0; i < sys.reps.size(); ++i)
    for (size_t j = i + 1; j < sys.reps.size(); ++j) {
      const IntMat& ri = sys.reps[i];
      const IntMat& rj = sys.reps[j];
      IntMat adj{rj[3], -rj[1], -rj[2], rj[0]};
      IntMat m = imat_mul(ri, adj); // ri * rj^-1 * p
      if (m[0] % p || m[1] % p || m[2] % p || m[3] % p) continue;
      IntMat q{m[0] / p, m[1] / p, m[2] / p, m[3] / p};
      if (imat_det(q) == 1 && membership(desc, q))
        throw VerificationFailed("double coset representatives are equivalent");
    }
  return sys;
}

Integer ModularPolynomial::coeff(long i, long j) const {
  if (i < j) std::swap(i, j);
  auto it = coeffs.find({i, j});
  return it == coeffs.end() ? Integer(0) : it->second;
}

RationalPoly ModularPolynomial::evaluate_first(const Rational& x) const {
  std::vector<Rational> out(static_cast<size_t>(p + 2), Rational(0));
  // powers of x
  std::vector<Rational> xp(static_cast<size_t>(p + 2), Rational(1));
  for (long i = 1; i <= p + 1; ++i) xp[static_cast<size_t>(i)] = xp[static_cast<size_t>(i - 1)] * x;
  for (const auto& [ij, c] : coeffs) {
    auto [i, j] = ij;
    out[static_cast<size_t>(j)] += Rational(c) * xp[static_cast<size_t>(i)];
    if (i != j) out[static_cast<size_t>(i)] += Rational(c) * xp[static_cast<size_t>(j)];
  }
  return RationalPoly(std::move(out));
}

RationalPoly endpoint_poly(const Rational& jQ, const ModularPolynomial& phi,
                           const UniformizerSpec& spec) {
  if (spec.kind != UniformizerKind::J)
    throw ValidationError("algebraic endpoints are only available for the j uniformizer");
  long p = phi.p;
  if (jQ == 0 || jQ == 1728) throw BadPrime("j(Q) in {0, 1728} violates the good-prime condition");
  Rational shifted = jQ - 1728;
  if (mpz_divisible_ui_p(jQ.get_num().get_mpz_t(), static_cast<unsigned long>(p)) ||
      mpz_divisible_ui_p(shifted.get_num().get_mpz_t(), static_cast<unsigned long>(p)) ||
      mpz_divisible_ui_p(jQ.get_den().get_mpz_t(), static_cast<unsigned long>(p)))
    throw BadPrime("p divides j(Q), j(Q) - 1728, or the denominator of j(Q)");

  RationalPoly f = phi.evaluate_first(jQ);
  // psi(t) = f(t + jQ): synthetic Taylor shift
  std::vector<Rational> c = f.coeffs;
  size_t n = c.size();
  for (size_t i = 0; i + 1 < n; ++i)
    for (size_t k = n - 1; k >= i + 1; --k) c[k - 1] += jQ * c[k];
  RationalPoly psi{std::move(c)};
  if (!psi.is_monic()) psi.make_monic();
  if (psi.degree() != p + 1) throw ValidationError("endpoint polynomial has wrong degree");
  return psi;
}

BigComplex fundamental_domain_reduce(const BigComplex& tau) {
  long prec = tau.prec_bits();
  BigComplex t = tau;
  BigFloat half(Rational(1, 2), prec);
  for (int it = 0; it < 4096; ++it) {
    // recentre the real part into [-1/2, 1/2)
    BigFloat n = (t.re() + half).floor();
    if (!n.is_zero()) t = BigComplex(t.re() - n, t.im());
    if (t.norm() < BigFloat(1, prec) - BigFloat(1, prec).mul_2exp(-prec + 8))
      t = -t.inverse();
    else
      return t;
  }
  throw ConvergenceFailure("fundamental domain reduction did not terminate");
}

BigComplex j_at_tau(const BigComplex& tau, long prec) {
  BigComplex t = fundamental_domain_reduce(BigComplex(tau.re().with_prec(prec), tau.im().with_prec(prec)));
  BigComplex q = nome_from_tau(t, 1);
  return j_taylor(q, 1)[0];
}

RationalPoly endpoint_values_transcendental(const BigComplex& tauQ, const CosetSystem& coset,
                                            const UniformizerSpec& spec,
                                            const GroupDescriptor& desc, long h) {
  (void)h; // the uniformizer value at a point does not depend on the width
  long prec = tauQ.prec_bits();
  long N = desc.N;
  BigComplex base(spec.base_value, prec);
  std::vector<BigComplex> roots;
  for (const auto& b : coset.reps) {
    BigComplex num = BigComplex(b[0], prec) * tauQ + BigComplex(b[1], prec);
    BigComplex den = BigComplex(b[2], prec) * tauQ + BigComplex(b[3], prec);
    BigComplex ti = num * den.inverse();
    BigComplex u(prec);
    switch (spec.kind) {
      case UniformizerKind::J:
        u = j_at_tau(ti, prec);
        break;
      case UniformizerKind::ONE_OVER_J:
        u = j_at_tau(ti, prec).inverse();
        break;
      case UniformizerKind::J_PLUS_JN:
        u = j_at_tau(ti, prec) + j_at_tau(ti * BigComplex(N, prec), prec);
        break;
      case UniformizerKind::J_TIMES_JN:
        u = j_at_tau(ti, prec) * j_at_tau(ti * BigComplex(N, prec), prec);
        break;
    }
    roots.push_back(u - base);
  }
  return poly_from_complex_roots(roots, prec / 4);
}

} // namespace modcol
