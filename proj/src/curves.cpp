#include "modcol/curves.hpp"

#include "modcol/error.hpp"
#include "modcol/lattice.hpp"

#include <cmath>
#include <numeric>

namespace modcol {

const std::vector<long>& cm_discriminant_table() {
  static const std::vector<long> table = {-3,  -4,  -7,  -8,  -11, -12, -16,
                                          -19, -27, -28, -43, -67, -163};
  return table;
}

BigComplex order_generator_tau(long delta, long prec) {
  if (delta >= 0) throw Error("Domain", "discriminant must be negative");
  BigFloat root = BigFloat(-delta, prec).sqrt();
  if (((delta % 4) + 4) % 4 == 0) return BigComplex(BigFloat(0, prec), root.mul_2exp(-1));
  return BigComplex(BigFloat(Rational(1, 2), prec), root.mul_2exp(-1));
}

NormEquationResult solve_norm_equation(long delta, long N, long prec) {
  long dm = ((delta % 4) + 4) % 4;
  if (delta >= 0 || (dm != 0 && dm != 1))
    throw Error("Domain", "not a negative discriminant");

  // |c*tau + d|^2 with tau the order generator:
  //   delta = 0 mod 4: c^2*|delta|/4 + d^2
  //   delta = 1 mod 4: c^2*(1+|delta|)/4 + c*d + d^2
  NormEquationResult out;
  bool found = false;
  long cmax = static_cast<long>(std::sqrt(4.0 * static_cast<double>(N) /
                                          static_cast<double>(-delta))) +
              2;
  for (long c = 0; c <= cmax && !found; ++c) {
    long dbound = static_cast<long>(std::sqrt(static_cast<double>(N))) + std::abs(c) + 2;
    // prefer non-negative d (canonical representative)
    for (long k = 0; k <= 2 * dbound; ++k) {
      long d = (k <= dbound) ? k : dbound - k; // 0, 1, ..., dbound, -1, ..., -dbound
      if (c == 0 && d <= 0) continue;
      if (std::gcd(c, d) != 1) continue;
      long norm4; // 4*|c tau + d|^2
      if (dm == 0)
        norm4 = c * c * (-delta) + 4 * d * d;
      else
        norm4 = c * c * (1 - delta) + 4 * c * d + 4 * d * d;
      if (norm4 == 4 * N) {
        out.c = c;
        out.d = d;
        found = true;
        break;
      }
    }
  }
  if (!found) throw NoSolution("norm equation |c*tau+d|^2 = N has no solution (inert level)");

  // complete the bottom row (c, d) to an SL_2(Z) matrix: a*d - b*c = 1
  Integer g, x, t;
  Integer ci(out.c), di(out.d);
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), t.get_mpz_t(), di.get_mpz_t(), ci.get_mpz_t());
  if (g != 1) throw Error("Internal", "norm equation solution with gcd(c,d) != 1");
  long a = static_cast<long>(x.get_si());
  long b = -static_cast<long>(t.get_si());
  out.gamma = {a, b, out.c, out.d};
  if (imat_det(out.gamma) != 1) throw Error("Internal", "gamma is not unimodular");

  BigComplex tau = order_generator_tau(delta, prec);
  BigComplex num = BigComplex(a, prec) * tau + BigComplex(b, prec);
  BigComplex den = BigComplex(out.c, prec) * tau + BigComplex(out.d, prec);
  out.tau_hat = num * den.inverse();
  return out;
}

std::vector<long> cm_points_for_curve(const CurveDescriptor& desc) {
  std::vector<long> out;
  long N = desc.group.N;
  bool want_inert = desc.group.family == CurveFamily::NS_CARTAN_PLUS;
  for (long delta : cm_discriminant_table()) {
    Integer d(delta), n(N);
    int k = mpz_kronecker(d.get_mpz_t(), n.get_mpz_t());
    bool inert = (k == -1);
    if (want_inert == inert) out.push_back(delta);
  }
  return out;
}

bool good_prime_check(const RationalPointRecord& point, long p, const CurveDescriptor& desc) {
  if (std::gcd(p, desc.group.N) != 1) return false;
  if (point.is_cusp) return true; // cusps carry no endpoint arithmetic
  const Rational& j = point.j_value;
  if (j == 0 || j == 1728) return false;
  Rational shifted = j - 1728;
  unsigned long up = static_cast<unsigned long>(p);
  if (mpz_divisible_ui_p(j.get_num().get_mpz_t(), up)) return false;
  if (mpz_divisible_ui_p(j.get_den().get_mpz_t(), up)) return false;
  if (mpz_divisible_ui_p(shifted.get_num().get_mpz_t(), up)) return false;
  return true;
}

Rational uniformizer_target(UniformizerKind kind, const Rational& j_value) {
  if (kind != UniformizerKind::ONE_OVER_J) return j_value;
  if (j_value == 0) throw SingularUniformizer("1/j is singular over j = 0");
  return 1 / j_value;
}

BigComplex refine_point_nome(const CurveDescriptor& desc, const RationalPointRecord& point,
                             long prec) {
  if (point.is_cusp) throw Error("Domain", "cusps have no nome");
  long N = desc.group.N;
  long h = desc.h;
  BigComplex tau(point.tau0.re().with_prec(prec), point.tau0.im().with_prec(prec));
  BigComplex q = nome_from_tau(tau, h);
  BigComplex target(uniformizer_target(desc.uniformizer_default, point.j_value), prec);
  BigFloat tol = BigFloat(1, prec).mul_2exp(-prec + 16);
  for (int it = 0; it < 64; ++it) {
    ComplexSeries u = uniformizer_series(desc.uniformizer_default, q, N, h, 2);
    BigComplex f = u[0] - target;
    if (u[1].is_zero()) throw SingularUniformizer("uniformizer derivative vanishes at the point");
    BigComplex dq = f * u[1].inverse();
    q -= dq;
    if (dq.abs() < tol * q.abs()) {
      // one confirming evaluation
      ComplexSeries u2 = uniformizer_series(desc.uniformizer_default, q, N, h, 1);
      BigFloat resid = (u2[0] - target).abs();
      BigFloat scale = target.abs() + BigFloat(1, prec);
      if (resid < scale.mul_2exp(-prec / 2)) return q;
    }
  }
  throw ConvergenceFailure("nome refinement did not converge from the tau seed");
}

void check_point_coherence(const CurveDescriptor& desc, const RationalPointRecord& point) {
  if (point.is_cusp) return;
  try {
    long prec = 320;
    BigComplex q = refine_point_nome(desc, point, prec);
    // the refined q must stay near the seed (guards against converging to a
    // different point)
    BigComplex q_seed = nome_from_tau(point.tau0, desc.h);
    BigFloat drift = (q - q_seed).abs();
    if (!(drift < q.abs() * BigFloat(Rational(1, 1000), prec) + BigFloat(Rational(1, 100000), prec)))
      throw CoherenceError("refined nome drifted from the tau seed for point " + point.label);
    ComplexSeries u = uniformizer_series(desc.uniformizer_default, q, desc.group.N, desc.h, 1);
    Rational back = rational_reconstruct(u[0], 200);
    if (back != uniformizer_target(desc.uniformizer_default, point.j_value))
      throw CoherenceError("uniformizer value mismatch for point " + point.label);
  } catch (const CoherenceError&) {
    throw;
  } catch (const Error& e) {
    throw CoherenceError("tau/j coherence failed for point " + point.label + ": " + e.what());
  }
}

} // namespace modcol
