#ifndef MODCOL_HECKE_HPP
#define MODCOL_HECKE_HPP

#include "modcol/modfunc.hpp"
#include "modcol/rational.hpp"

#include <array>
#include <map>
#include <memory>
#include <vector>

namespace modcol {

// element of GL_2(Q)^+ (integer entries in practice)
struct GL2Q {
  Rational a, b, c, d;
  Rational det() const { return a * d - b * c; }
};

using IntMat = std::array<long, 4>; // row-major [a, b; c, d]

inline long imat_det(const IntMat& m) { return m[0] * m[3] - m[1] * m[2]; }
IntMat imat_mul(const IntMat& x, const IntMat& y);

enum class CurveFamily { GAMMA0, GAMMA0_PLUS, NS_CARTAN_PLUS, GENERIC_H };

// congruence subgroup described by its image mod N
struct GroupDescriptor {
  CurveFamily family = CurveFamily::GAMMA0;
  long N = 1;
  std::vector<IntMat> generators_mod_N; // GENERIC_H only
  long epsilon = 0;                     // NS_CARTAN_PLUS: quadratic non-residue mod N

  // closure of generators_mod_N in SL_2(Z/N), built on first use
  mutable std::shared_ptr<std::vector<long>> closure_cache;
};

// true iff m (det 1) lies in the subgroup mod N
bool membership(const GroupDescriptor& desc, const IntMat& m);

struct CosetSystem {
  GL2Q alpha;
  std::vector<IntMat> reps; // determinant p each
  long count() const { return static_cast<long>(reps.size()); }
};

// {[1,i;0,p] : i < p} plus [p,0;0,1]
CosetSystem gamma0_coset_reps(long p);

// double-coset representatives of Gamma_H \ Gamma_H alpha Gamma_H: enumerate
// Gamma^0(p)\SL_2(Z), and for each representative beta build gamma in
// Gamma^0(p) with gamma*beta in Gamma_H by lifting beta^-1 mod N (CRT with
// the upper-triangularity condition mod p); representatives are
// alpha*gamma*beta, validated pairwise inequivalent
CosetSystem double_coset_reps(const GroupDescriptor& desc, long p, const GL2Q& alpha);

struct ModularPolynomial {
  long p = 0;
  std::map<std::pair<long, long>, Integer> coeffs; // i >= j; symmetric completion implied

  Integer coeff(long i, long j) const;
  // evaluate Phi_p(x, Y) as a polynomial in Y
  RationalPoly evaluate_first(const Rational& x) const;
};

// psi(t) = Phi_p(jQ, t + jQ), monic of degree p+1; roots are j(Q_i) - j(Q)
RationalPoly endpoint_poly(const Rational& jQ, const ModularPolynomial& phi,
                           const UniformizerSpec& spec);

// evaluate the uniformizer at beta_i * tauQ for every coset representative
// (reducing to the SL_2(Z) fundamental domain first) and reconstruct the
// exact monic rational polynomial with those roots
RationalPoly endpoint_values_transcendental(const BigComplex& tauQ, const CosetSystem& coset,
                                            const UniformizerSpec& spec,
                                            const GroupDescriptor& desc, long h = 1);

// reduce tau into the standard SL_2(Z) fundamental domain
BigComplex fundamental_domain_reduce(const BigComplex& tau);

// j(tau) for tau in the upper half plane, via fundamental-domain reduction
BigComplex j_at_tau(const BigComplex& tau, long prec);

} // namespace modcol

#endif
