#ifndef MODCOL_INTEGRATOR_HPP
#define MODCOL_INTEGRATOR_HPP

#include "modcol/curves.hpp"
#include "modcol/padic.hpp"

#include <string>
#include <vector>

namespace modcol {

// Working-precision knobs for the whole pipeline. complex_bits caps the
// rational heights recoverable by reconstruction (complex_bits must be at
// least 2 * algdep_height_bits), so escalation scales them together.
struct PrecisionConfig {
  long complex_bits = 1200;
  int series_order = 40;        // number of u-coefficients solved for
  long padic_target = 10;       // target absolute p-adic precision
  long qexp_cap = 1000000;      // refuse q-expansions longer than this
  long algdep_height_bits = 400;

  void validate() const;
};

// One escalation step after an InsufficientOrder failure: height and complex
// bits double (reconstruction reach is the usual limiting factor) while the
// series order grows by a quarter (the order itself is chosen from the
// endpoint Newton polygon and rarely needs more).
void escalate_precision(PrecisionConfig& cfg);

// Smallest series order K such that the Newton-polygon tail bound
// ceil((k+1) * v_min) - v_p(k+1) reaches `target` for every k >= K.
int series_order_for_target(const Rational& v_min, long p, long target);

// Exact coefficients of omega = (sum_i x_i u^i) du around the expansion
// point, with the complex residual left by each reconstruction.
struct ExpansionResult {
  std::vector<Rational> x;
  std::vector<BigFloat> residuals;
  int order = 0;
};

struct ColemanResult {
  std::vector<PadicNumber> values; // one integral per basis form
  long certified_prec = 0;
  long prime = 0;
  std::string from_label, to_label;
  UniformizerKind uniformizer = UniformizerKind::J;
};

// Step 1 of the expansion algorithm: with t = q - q0, solve
//   sum_i x_i u(t)^i u'(t) = g(t)
// coefficient-by-coefficient (the system is lower triangular with diagonal
// a_1^{i+1}), then rational-reconstruct each x_i. Coefficients failing the
// residual test are dropped from the tail; a failure at x_0 is an error.
ExpansionResult expand_form_in_uniformizer(const ComplexSeries& omega_taylor,
                                           const ComplexSeries& u_taylor,
                                           const PrecisionConfig& cfg);

// Sum over the residue disc of the tiny integrals int_{Q_i}^{Q} omega where
// the u(Q_i) are the roots of `endpoints`: returns -sum_k x_k/(k+1) * p_{k+1}
// with p_m the m-th power sum, certified via the Newton-polygon tail bound.
PadicNumber tiny_integral_sum(const ExpansionResult& x, const RationalPoly& endpoints,
                              const Integer& p, const PrecisionConfig& cfg);

// Largest |eigenvalue| of a small rational matrix (double precision; used
// for the Ramanujan-bound sanity check).
double spectral_radius(const std::vector<std::vector<Rational>>& A);

// Solve ((p+1)I - A) v = rhs_Q - rhs_R over Q_p. The Ramanujan bound
// |lambda| <= 2 sqrt(p) is checked first; a violation is BadHeckeMatrix.
std::vector<PadicNumber> solve_fundamental_system(const std::vector<std::vector<Rational>>& A,
                                                  const std::vector<PadicNumber>& rhs_Q,
                                                  const std::vector<PadicNumber>& rhs_R,
                                                  long p);

// End-to-end single integral vector int_R^Q omega_i for the full basis.
// phi, when given, supplies the endpoint polynomial algebraically for the
// j-based uniformizers; otherwise endpoints are computed transcendentally
// from the coset representatives. On InsufficientOrder the configuration is
// escalated per point (escalate_precision) up to four times.
ColemanResult coleman_integrate(const CurveDescriptor& desc, const RationalPointRecord& Q,
                                const RationalPointRecord& R, long p, PrecisionConfig cfg,
                                const ModularPolynomial* phi = nullptr);

// tau in the upper half plane with q0 = e^{2 pi i tau / h}, real part
// normalized into (-h/2, h/2].
BigComplex tau_from_nome(const BigComplex& q0, long h);

// The tiny-sum right-hand sides at one point, for every basis form
// (exposed for the table-style CLI output and the acceptance checks).
std::vector<PadicNumber> tiny_sums_at_point(const CurveDescriptor& desc,
                                            const RationalPointRecord& P, long p,
                                            const PrecisionConfig& cfg,
                                            const ModularPolynomial* phi = nullptr);

// expansion of a single basis form at P in the default uniformizer
ExpansionResult expand_at_point(const CurveDescriptor& desc, const RationalPointRecord& P,
                                int form_index, const PrecisionConfig& cfg);

} // namespace modcol

#endif
