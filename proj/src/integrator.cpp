#include "modcol/integrator.hpp"

#include "modcol/error.hpp"
#include "modcol/lattice.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace modcol {

void PrecisionConfig::validate() const {
  if (complex_bits <= 0 || series_order <= 0 || padic_target <= 0 || qexp_cap <= 0 ||
      algdep_height_bits <= 0)
    throw ValidationError("precision configuration fields must be positive");
  if (complex_bits < 2 * algdep_height_bits)
    throw ValidationError("complex_bits must be at least 2 * algdep_height_bits");
}

void escalate_precision(PrecisionConfig& cfg) {
  cfg.algdep_height_bits *= 2;
  cfg.complex_bits = std::max(2 * cfg.complex_bits, 3 * cfg.algdep_height_bits);
  cfg.series_order += cfg.series_order / 4 + 1;
}

int series_order_for_target(const Rational& v_min, long p, long target) {
  if (!(v_min > 0)) return 1;
  // beyond hi the bound exceeds target + 12, which dominates any v_p(k+1)
  // correction in the reachable range
  Rational hi_r = Rational(target + 12) / v_min;
  long hi = static_cast<long>(hi_r.get_d()) + 4;
  long K = 1;
  for (long k = 1; k <= hi; ++k) {
    Integer kp1(k + 1);
    long vp = 0;
    while (mpz_divisible_ui_p(kp1.get_mpz_t(), static_cast<unsigned long>(p))) {
      mpz_divexact_ui(kp1.get_mpz_t(), kp1.get_mpz_t(), static_cast<unsigned long>(p));
      ++vp;
    }
    Rational lhs = Rational(k + 1) * v_min;
    Integer ce;
    mpz_cdiv_q(ce.get_mpz_t(), lhs.get_num().get_mpz_t(), lhs.get_den().get_mpz_t());
    if (ce - vp < target) K = k + 1;
  }
  return static_cast<int>(K);
}

ExpansionResult expand_form_in_uniformizer(const ComplexSeries& omega_taylor,
                                           const ComplexSeries& u_taylor,
                                           const PrecisionConfig& cfg) {
  cfg.validate();
  int n = std::min(omega_taylor.order(), u_taylor.order() - 1);
  if (n < 1) throw Error("Domain", "need at least a degree-1 uniformizer series");
  long bits = u_taylor[1].prec_bits();

  BigFloat tiny = BigFloat(1, bits).mul_2exp(-cfg.complex_bits / 2);
  if (u_taylor[1].abs() < tiny)
    throw SingularUniformizer("uniformizer has |a_1| below 2^(-complex_bits/2)");

  // zero the constant term: u is a uniformizer, the residual constant is
  // numerical noise from the base-point subtraction
  ComplexSeries u = u_taylor;
  u.at(0) = BigComplex(bits);

  // rows[i][k] = coefficient of t^k in u^i * u'; the system is lower
  // triangular with rows[k][k] = a_1^{k+1}
  std::vector<std::vector<BigComplex>> rows;
  rows.reserve(static_cast<size_t>(n));
  ComplexSeries cur = u.derivative();
  for (int i = 0; i < n; ++i) {
    std::vector<BigComplex> row;
    row.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
      row.push_back(k < cur.order() ? cur[k] : BigComplex(bits));
    rows.push_back(std::move(row));
    if (i + 1 < n) cur = cur * u;
  }

  std::vector<BigComplex> xc;
  xc.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    BigComplex acc = omega_taylor[k];
    for (int i = 0; i < k; ++i) acc -= xc[static_cast<size_t>(i)] * rows[static_cast<size_t>(i)][static_cast<size_t>(k)];
    xc.push_back(acc * rows[static_cast<size_t>(k)][static_cast<size_t>(k)].inverse());
  }

  ExpansionResult out;
  for (int k = 0; k < n; ++k) {
    Rational r;
    try {
      r = rational_reconstruct(xc[static_cast<size_t>(k)], cfg.algdep_height_bits);
    } catch (const Error& e) {
      if (k == 0)
        throw ReconstructionFailed("coefficient 0 not recognizable as a rational: " +
                                   std::string(e.what()));
      break; // keep the certified prefix
    }
    BigFloat resid = (xc[static_cast<size_t>(k)] - BigComplex(r, bits)).abs();
    if (!(resid < tiny)) {
      if (k == 0) throw ReconstructionFailed("coefficient 0 fails the residual test");
      break;
    }
    out.x.push_back(r);
    out.residuals.push_back(resid);
  }
  out.order = static_cast<int>(out.x.size());
  return out;
}

PadicNumber tiny_integral_sum(const ExpansionResult& x, const RationalPoly& endpoints,
                              const Integer& p, const PrecisionConfig& cfg) {
  if (!endpoints.is_monic())
    throw ValidationError("endpoint polynomial must be monic");
  if (x.x.empty()) throw InsufficientOrder("empty expansion");
  Rational v_min = newton_polygon_min_slope(endpoints, p);
  std::vector<Rational> sums = power_sums_from_poly(endpoints, static_cast<int>(x.x.size()));
  // orientation: the series evaluation yields sums oriented out of the
  // center point; the reported convention integrates into it, one global
  // sign applied here and nowhere else
  return -padic_eval_series(x.x, sums, p, cfg.padic_target, v_min);
}

namespace {

// Durand-Kerner on a monic polynomial given in double precision; plenty for
// the genus <= 3 spectral bound check.
std::vector<std::complex<double>> monic_roots(const std::vector<double>& c) {
  size_t d = c.size() - 1;
  auto eval = [&](std::complex<double> z) {
    std::complex<double> acc = 1.0;
    for (size_t i = d; i-- > 0;) acc = acc * z + c[i];
    return acc;
  };
  std::vector<std::complex<double>> r(d);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> w = 1.0;
  for (auto& z : r) { w *= seed; z = w; }
  for (int it = 0; it < 500; ++it) {
    double moved = 0;
    for (size_t i = 0; i < d; ++i) {
      std::complex<double> den = 1.0;
      for (size_t j = 0; j < d; ++j)
        if (j != i) den *= r[i] - r[j];
      std::complex<double> step = eval(r[i]) / den;
      r[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-13) break;
  }
  return r;
}

} // namespace

double spectral_radius(const std::vector<std::vector<Rational>>& A) {
  size_t g = A.size();
  for (const auto& row : A)
    if (row.size() != g) throw ValidationError("matrix must be square");
  if (g == 0) return 0.0;

  // characteristic polynomial by the Faddeev-LeVerrier recurrence
  std::vector<std::vector<Rational>> M(g, std::vector<Rational>(g, Rational(0)));
  for (size_t i = 0; i < g; ++i) M[i][i] = 1;
  std::vector<Rational> c(g + 1, Rational(0));
  c[g] = 1;
  for (size_t k = 1; k <= g; ++k) {
    std::vector<std::vector<Rational>> AM(g, std::vector<Rational>(g, Rational(0)));
    for (size_t i = 0; i < g; ++i)
      for (size_t j = 0; j < g; ++j)
        for (size_t l = 0; l < g; ++l) AM[i][j] += A[i][l] * M[l][j];
    Rational tr(0);
    for (size_t i = 0; i < g; ++i) tr += AM[i][i];
    c[g - k] = -tr / Rational(static_cast<long>(k));
    M = AM;
    for (size_t i = 0; i < g; ++i) M[i][i] += c[g - k];
  }
  std::vector<double> cd(g + 1);
  for (size_t i = 0; i <= g; ++i) cd[i] = Rational(c[i]).get_d();
  double rad = 0;
  for (const auto& z : monic_roots(cd)) rad = std::max(rad, std::abs(z));
  return rad;
}

std::vector<PadicNumber> solve_fundamental_system(const std::vector<std::vector<Rational>>& A,
                                                  const std::vector<PadicNumber>& rhs_Q,
                                                  const std::vector<PadicNumber>& rhs_R,
                                                  long p) {
  size_t g = A.size();
  if (rhs_Q.size() != g || rhs_R.size() != g)
    throw ValidationError("right-hand sides must match the matrix dimension");
  double bound = 2.0 * std::sqrt(static_cast<double>(p)) + 1e-6;
  if (spectral_radius(A) > bound)
    throw BadHeckeMatrix("an eigenvalue exceeds the Ramanujan bound 2*sqrt(p)");

  Integer pz(p);
  long prec = 0;
  bool first = true;
  for (size_t i = 0; i < g; ++i) {
    for (const PadicNumber* v : {&rhs_Q[i], &rhs_R[i]}) {
      if (first || v->abs_prec() < prec) prec = v->abs_prec();
      first = false;
    }
  }

  PadicMatrix M;
  M.p = pz;
  M.entries.resize(g);
  std::vector<PadicNumber> b;
  for (size_t i = 0; i < g; ++i) {
    for (size_t j = 0; j < g; ++j) {
      Rational e = (i == j ? Rational(p + 1) : Rational(0)) - A[i][j];
      M.entries[i].push_back(padic_from_rational(e, pz, prec + 8));
    }
    b.push_back(rhs_Q[i] - rhs_R[i]);
  }
  return padic_linear_solve(M, b);
}

BigComplex tau_from_nome(const BigComplex& q0, long h) {
  long bits = q0.prec_bits();
  BigFloat two_pi = BigFloat::pi(bits).mul_2exp(1);
  BigFloat log_abs = q0.norm().log().mul_2exp(-1);
  BigFloat arg(bits);
  mpfr_atan2(arg.raw(), q0.im().raw(), q0.re().raw(), MPFR_RNDN);
  BigFloat hh(h, bits);
  return {hh * arg / two_pi, -(hh * log_abs) / two_pi};
}

namespace {

// Taylor data of the point shared by all basis forms: the refined nome, the
// uniformizer series and the Jacobian factor 1/(q0 + t).
struct PointSetup {
  BigComplex q0;
  ComplexSeries u;   // order series_order + 1
  ComplexSeries den; // 1/(q0 + t), order series_order
  UniformizerSpec spec;
};

PointSetup setup_point(const CurveDescriptor& desc, const RationalPointRecord& P,
                       const PrecisionConfig& cfg) {
  PointSetup s;
  s.q0 = refine_point_nome(desc, P, cfg.complex_bits);
  s.spec =
      UniformizerSpec{desc.uniformizer_default, uniformizer_target(desc.uniformizer_default, P.j_value)};
  s.u = uniformizer_taylor(s.spec, s.q0, desc.group.N, desc.h, cfg.series_order + 1);
  std::vector<BigComplex> lin;
  lin.push_back(s.q0);
  lin.push_back(BigComplex(1, cfg.complex_bits));
  for (int i = 2; i < cfg.series_order; ++i) lin.push_back(BigComplex(cfg.complex_bits));
  s.den = ComplexSeries(std::move(lin), "t").inverse();
  return s;
}

void require_terms(const CurveDescriptor& desc, const RationalPointRecord& P,
                   const BigComplex& q0, const PrecisionConfig& cfg, int form_index) {
  long need = qexp_required_terms(q0, cfg.series_order + 1, cfg.complex_bits);
  if (need > cfg.qexp_cap) {
    std::ostringstream os;
    os << "expansion at point " << P.label << " requires " << need
       << " q-expansion terms, above the configured cap " << cfg.qexp_cap;
    throw InsufficientTerms(os.str());
  }
  auto check = [&](int i) {
    long have = desc.basis[static_cast<size_t>(i)].n_terms();
    if (need > have) {
      std::ostringstream os;
      os << "expansion at point " << P.label << " requires " << need
         << " q-expansion terms for form " << i << "; the fixture provides " << have;
      throw InsufficientTerms(os.str());
    }
  };
  if (form_index >= 0) {
    check(form_index);
  } else {
    for (int i = 0; i < static_cast<int>(desc.basis.size()); ++i) check(i);
  }
}

ExpansionResult expand_one_form(const CurveDescriptor& desc, const PointSetup& s,
                                int form_index, const PrecisionConfig& cfg) {
  const QExpansion& f = desc.basis[static_cast<size_t>(form_index)];
  // ignore q-expansion terms beyond what the Taylor shift can feel
  QExpansion ftrunc = f;
  long need = qexp_required_terms(s.q0, cfg.series_order + 1, cfg.complex_bits) + 8;
  if (need < f.n_terms())
    ftrunc.coeffs.resize(static_cast<size_t>(need), {});
  ComplexSeries g = qexp_taylor(ftrunc, s.q0, cfg.series_order);
  g = (g * s.den).scaled(BigComplex(desc.normalization, cfg.complex_bits));
  return expand_form_in_uniformizer(g, s.u, cfg);
}

RationalPoly endpoints_at_point(const CurveDescriptor& desc, const RationalPointRecord& P,
                                long p, const ModularPolynomial* phi) {
  UniformizerSpec spec{desc.uniformizer_default,
                       uniformizer_target(desc.uniformizer_default, P.j_value)};
  if (phi && phi->p == p && desc.uniformizer_default == UniformizerKind::J)
    return endpoint_poly(P.j_value, *phi, spec);
  CosetSystem coset;
  switch (desc.group.family) {
  case CurveFamily::GAMMA0:
  case CurveFamily::GAMMA0_PLUS:
    coset = gamma0_coset_reps(p);
    break;
  default:
    throw ValidationError("endpoint computation for this curve family needs a modular "
                          "polynomial for the uniformizer");
  }
  // the endpoint values are algebraic integers of modest height; reconstruct
  // at a precision of their own, escalating only if the relation search fails
  for (long eprec = 1600;; eprec *= 2) {
    try {
      BigComplex q0 = refine_point_nome(desc, P, eprec);
      BigComplex tau = tau_from_nome(q0, desc.h);
      return endpoint_values_transcendental(tau, coset, spec, desc.group, desc.h);
    } catch (const Error& e) {
      if (eprec < 25600 && (e.kind() == "NoRelationFound" || e.kind() == "NotReal")) continue;
      throw;
    }
  }
}

[[noreturn]] void rethrow_with_stage(const Error& e, const std::string& stage) {
  std::string msg = e.what();
  std::string prefix = e.kind() + ": ";
  if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
  throw Error(e.kind(), "stage " + stage + ": " + msg);
}

} // namespace

ExpansionResult expand_at_point(const CurveDescriptor& desc, const RationalPointRecord& P,
                                int form_index, const PrecisionConfig& cfg) {
  cfg.validate();
  if (P.is_cusp) throw ValidationError("cannot expand at a cusp");
  if (form_index < 0 || form_index >= static_cast<int>(desc.basis.size()))
    throw ValidationError("form index out of range");
  PointSetup s = setup_point(desc, P, cfg);
  require_terms(desc, P, s.q0, cfg, form_index);
  return expand_one_form(desc, s, form_index, cfg);
}

std::vector<PadicNumber> tiny_sums_at_point(const CurveDescriptor& desc,
                                            const RationalPointRecord& P, long p,
                                            const PrecisionConfig& cfg,
                                            const ModularPolynomial* phi) {
  cfg.validate();
  Integer pz(p);
  size_t g = desc.basis.size();
  if (P.is_cusp) {
    // a cusp pins the whole Hecke orbit to the cusp: every tiny integral is 0
    std::vector<PadicNumber> zeros;
    for (size_t i = 0; i < g; ++i) zeros.push_back(PadicNumber::zero(pz, cfg.padic_target));
    return zeros;
  }
  if (!good_prime_check(P, p, desc))
    throw BadPrime("point " + P.label + " fails the good-prime condition at p = " +
                   std::to_string(p));
  // endpoints first: their Newton polygon dictates how many expansion
  // coefficients the tail certificate needs before any heavy Taylor work
  RationalPoly psi = endpoints_at_point(desc, P, p, phi);
  Rational v_min = newton_polygon_min_slope(psi, pz);
  PrecisionConfig local = cfg;
  if (v_min > 0 && v_min < Rational(1000000))
    local.series_order =
        std::max(cfg.series_order, series_order_for_target(v_min, p, cfg.padic_target) + 4);
  PointSetup s = setup_point(desc, P, local);
  require_terms(desc, P, s.q0, local, -1);
  std::vector<PadicNumber> out;
  for (size_t i = 0; i < g; ++i) {
    for (int tries = 0;; ++tries) {
      ExpansionResult ex = expand_one_form(desc, s, static_cast<int>(i), local);
      try {
        out.push_back(tiny_integral_sum(ex, psi, pz, local));
        break;
      } catch (const InsufficientOrder&) {
        if (tries >= 2 || ex.order < 2) throw;
        // the reconstruction ran out of height reach before the certificate
        // was met: measure the height growth per index from the accepted
        // prefix and aim the bound at the full order directly (the blind
        // doubling in escalate_precision overshoots the q-term budget)
        long rate = 8;
        for (int k = 0; k < ex.order; ++k) {
          long bits = static_cast<long>(
              std::max(mpz_sizeinbase(ex.x[static_cast<size_t>(k)].get_num().get_mpz_t(), 2),
                       mpz_sizeinbase(ex.x[static_cast<size_t>(k)].get_den().get_mpz_t(), 2)));
          rate = std::max(rate, (bits + k) / (k + 1));
        }
        long want = rate * (local.series_order + 6) + 128;
        if (want <= local.algdep_height_bits) want = 2 * local.algdep_height_bits;
        local.algdep_height_bits = want;
        local.complex_bits = std::max(local.complex_bits, 2 * want + 256);
        s = setup_point(desc, P, local);
        require_terms(desc, P, s.q0, local, -1);
      }
    }
  }
  return out;
}

ColemanResult coleman_integrate(const CurveDescriptor& desc, const RationalPointRecord& Q,
                                const RationalPointRecord& R, long p, PrecisionConfig cfg,
                                const ModularPolynomial* phi) {
  cfg.validate();
  auto it = desc.hecke.find(p);
  if (it == desc.hecke.end())
    throw MissingHeckeMatrix("no Hecke matrix for p = " + std::to_string(p) +
                             " on this curve");
  const auto& A = it->second;

  // each endpoint escalates on its own: the two points can sit at wildly
  // different nome magnitudes and coefficient heights
  auto sums_for = [&](const RationalPointRecord& pt) {
    PrecisionConfig local = cfg;
    for (int attempt = 0;; ++attempt) {
      try {
        return tiny_sums_at_point(desc, pt, p, local, phi);
      } catch (const Error& e) {
        if (e.kind() == "InsufficientOrder" && attempt < 4) {
          escalate_precision(local);
          continue;
        }
        rethrow_with_stage(e, "tiny-sums at " + pt.label);
      }
    }
  };
  std::vector<PadicNumber> rhs_Q = sums_for(Q);
  std::vector<PadicNumber> rhs_R = sums_for(R);
  std::string stage = "tiny-sums";

  ColemanResult res;
  try {
    stage = "fundamental system";
    res.values = solve_fundamental_system(A, rhs_Q, rhs_R, p);
  } catch (const Error& e) {
    rethrow_with_stage(e, stage);
  }
  res.prime = p;
  res.from_label = R.label;
  res.to_label = Q.label;
  res.uniformizer = desc.uniformizer_default;
  res.certified_prec = 0;
  bool first = true;
  for (const auto& v : res.values) {
    if (first || v.abs_prec() < res.certified_prec) res.certified_prec = v.abs_prec();
    first = false;
  }
  return res;
}

} // namespace modcol
