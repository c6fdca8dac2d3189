#ifndef MODCOL_CURVES_HPP
#define MODCOL_CURVES_HPP

#include "modcol/hecke.hpp"
#include "modcol/modfunc.hpp"

#include <map>
#include <string>
#include <vector>

namespace modcol {

// a modular curve with its cusp-form basis and Hecke data
struct CurveDescriptor {
  GroupDescriptor group;
  int genus = 0;
  long h = 1; // width of the q-expansion nome
  std::vector<QExpansion> basis;
  std::map<long, std::vector<std::vector<Rational>>> hecke; // prime -> genus x genus
  UniformizerKind uniformizer_default = UniformizerKind::J;
  Rational normalization = Rational(1); // omega_i = normalization * f_i * dq/q
};

struct RationalPointRecord {
  std::string label;
  Rational j_value;  // value of the default uniformizer's modular function
                     // (j, or j + j_N on Atkin-Lehner quotients)
  BigComplex tau0;   // upper-half-plane seed (refined at working precision)
  long cm_discriminant = 0; // 0 = none
  bool is_cusp = false;
};

// class-number-one discriminants
const std::vector<long>& cm_discriminant_table();

struct NormEquationResult {
  long c = 0, d = 0;
  IntMat gamma{1, 0, 0, 1};
  BigComplex tau_hat;
};

// solve |c*tau_E + d|^2 = N for the order of discriminant delta, complete
// (c, d) to gamma in SL_2(Z) by the extended Euclidean algorithm, and return
// tau_hat = gamma * tau_E at the requested precision
NormEquationResult solve_norm_equation(long delta, long N, long prec = 256);

// tau_E for the order of discriminant delta: sqrt(delta)/2 if delta = 0
// mod 4, else (1 + sqrt(delta))/2
BigComplex order_generator_tau(long delta, long prec);

// discriminants from the table whose order admits rational points on the
// curve: split/ramified level for Gamma_0 families, inert for nonsplit Cartan
std::vector<long> cm_points_for_curve(const CurveDescriptor& desc);

// good-prime condition: gcd(p, N) = 1 and p divides neither numerator nor
// denominator of j nor the numerator of j - 1728
bool good_prime_check(const RationalPointRecord& point, long p, const CurveDescriptor& desc);

// exact value of the uniformizer's underlying modular function at the
// point: j_value itself, except 1/j_value for the 1/j uniformizer
Rational uniformizer_target(UniformizerKind kind, const Rational& j_value);

// high-precision nome of the point: Newton-refine q against the exact
// uniformizer value starting from the tau0 seed
BigComplex refine_point_nome(const CurveDescriptor& desc, const RationalPointRecord& point,
                             long prec);

// validates that tau0 and j_value describe the same point (refine + exact
// rational reconstruction); throws CoherenceError naming the label
void check_point_coherence(const CurveDescriptor& desc, const RationalPointRecord& point);

} // namespace modcol

#endif
