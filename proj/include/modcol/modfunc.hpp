#ifndef MODCOL_MODFUNC_HPP
#define MODCOL_MODFUNC_HPP

#include "modcol/series.hpp"

#include <vector>

namespace modcol {

// Cusp-form Fourier expansion in q = e^{2*pi*i*tau/h}. Coefficients live in
// Q or Q(zeta_N); each is stored as a coordinate vector in powers of zeta_N
// (length-1 vectors are plain rationals). coeffs[n] multiplies q^n.
struct QExpansion {
  long N = 1;
  int weight = 2;
  long h = 1;
  std::vector<std::vector<Rational>> coeffs;

  long n_terms() const { return static_cast<long>(coeffs.size()); }
  bool is_rational() const;
  // the coefficient of q^n as a rational; throws if genuinely cyclotomic
  Rational rational_coeff(long n) const;
  BigComplex embedded_coeff(long n, long prec) const;
  bool is_zero() const;
};

enum class UniformizerKind { J, J_PLUS_JN, ONE_OVER_J, J_TIMES_JN };

struct UniformizerSpec {
  UniformizerKind kind = UniformizerKind::J;
  Rational base_value; // the subtracted constant u(Q)
};

// Taylor series of j at q = q0 (nome with h = 1), via the sparse Euler
// product route: a(q) from the pentagonal series, Delta = q*a(q)^24,
// f = Delta(q^2)/Delta(q), j = (256 f + 1)^3 / f.
ComplexSeries j_taylor(const BigComplex& q0, int order);

// Taylor series of j(q^m) at q = q0; j_taylor is the m = 1 case.
ComplexSeries j_taylor_scaled(const BigComplex& q0, long m, int order);

// Taylor series at q0 of the Euler function a(q) = prod (1 - q^n)
// (exposed for validation against the pentagonal expansion).
ComplexSeries euler_function_taylor(const BigComplex& q0, int order);

// Taylor shift of the q-expansion at q0 by Horner over the series ring.
ComplexSeries qexp_taylor(const QExpansion& f, const BigComplex& q0, int order);

// Taylor series of the uniformizer's underlying modular function at q0,
// without base-point subtraction; h is the width of the expansion nome
// (q0 = e^{2*pi*i*tau/h}), so the j-invariant itself is j(q0^h).
ComplexSeries uniformizer_series(UniformizerKind kind, const BigComplex& q0, long N, long h,
                                 int order);

// Taylor series of the uniformizer u at q0 (constant term ~ 0 when q0 sits
// over the base point).
ComplexSeries uniformizer_taylor(const UniformizerSpec& spec, const BigComplex& q0, long N,
                                 long h, int order);

// weight-2 Hecke action on coefficients: b_n = a_{np} + p * a_{n/p}
QExpansion hecke_on_qexp(const QExpansion& f, long p);

// Matrix of T_p on a basis of rational q-expansions, solved from leading
// coefficients and verified on the rest.
std::vector<std::vector<Rational>> hecke_matrix_from_basis(const std::vector<QExpansion>& basis,
                                                           long p);

// number of q-expansion terms needed for a Taylor shift at q0 to be
// accurate to 2^-prec through the requested derivative order
long qexp_required_terms(const BigComplex& q0, int order, long prec);

} // namespace modcol

#endif
