#ifndef MODCOL_LATTICE_HPP
#define MODCOL_LATTICE_HPP

#include "modcol/bigcomplex.hpp"
#include "modcol/rational.hpp"

#include <limits>
#include <vector>

namespace modcol {

// Row lattice with integer entries. Rows must be linearly independent
// over Q; lll_reduce reports DependentRows otherwise.
struct IntLattice {
  std::vector<std::vector<Integer>> basis;

  size_t rows() const { return basis.size(); }
  size_t cols() const { return basis.empty() ? 0 : basis[0].size(); }
};

// Exact-rational LLL (Gram-Schmidt over Q, no floating point). Intended
// for the small dimensions used by reconstruction (<= ~30).
IntLattice lll_reduce(const IntLattice& lattice, const Rational& delta = Rational(99, 100));

// Integer relation detection: smallest integer polynomial P, deg <= degree,
// with P(z) ~ 0 at the working precision of z. The candidate must pass the
// residual test |P(z)| < 2^(-prec/2) * height(P).
IntPoly algdep(const BigComplex& z, int degree, long height_bits);

// Degree-1 specialization: recover p/q from a complex approximation known
// to be (nearly) real.
// tol_exp2, when above the LONG_MIN default, overrides the absolute noise
// tolerance 2^tol_exp2 (used when z was computed among much larger
// intermediates whose roundoff dominates z's own scale)
Rational rational_reconstruct(const BigComplex& z, long height_bits,
                              long tol_exp2 = std::numeric_limits<long>::min());

// Newton's identities: power sums p_1..p_kmax of the roots of a monic
// rational polynomial, in exact arithmetic.
std::vector<Rational> power_sums_from_poly(const RationalPoly& P, int k_max);

// Expand prod (t - root_i) numerically and reconstruct each coefficient as
// an exact rational; the multiset of roots must be Galois-stable.
RationalPoly poly_from_complex_roots(const std::vector<BigComplex>& roots, long height_bits);

} // namespace modcol

#endif
