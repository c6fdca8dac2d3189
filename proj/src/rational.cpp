#include "modcol/rational.hpp"

#include "modcol/error.hpp"

#include <sstream>

namespace modcol {

long valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw Error("Domain", "valuation of zero");
  Integer m = abs(n);
  long v = 0;
  Integer q, r;
  for (;;) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    if (r != 0) break;
    m = q;
    ++v;
  }
  return v;
}

long valuation(const Rational& r, const Integer& p) {
  if (r == 0) throw Error("Domain", "valuation of zero");
  return valuation(Integer(r.get_num()), p) - valuation(Integer(r.get_den()), p);
}

Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("bad rational literal '" + s + "'");
  r.canonicalize();
  return r;
}

void RationalPoly::normalize() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

Rational RationalPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalPoly RationalPoly::derivative() const {
  RationalPoly d;
  for (size_t i = 1; i < coeffs.size(); ++i) d.coeffs.push_back(coeffs[i] * Rational(static_cast<long>(i)));
  d.normalize();
  return d;
}

void RationalPoly::make_monic() {
  normalize();
  if (coeffs.empty()) return;
  Rational lead = coeffs.back();
  for (auto& c : coeffs) c /= lead;
}

bool RationalPoly::is_monic() const {
  return !coeffs.empty() && coeffs.back() == 1;
}

std::string RationalPoly::to_string(const std::string& var) const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (coeffs[i] == 0) continue;
    if (!first) os << " + ";
    os << coeffs[i].get_str();
    if (i >= 1) os << "*" << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly r;
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
  for (size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
  for (size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
  r.normalize();
  return r;
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly r;
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
  for (size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
  for (size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
  r.normalize();
  return r;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RationalPoly r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  r.normalize();
  return r;
}

void IntPoly::normalize() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

void IntPoly::primitive_positive() {
  normalize();
  if (coeffs.empty()) return;
  Integer g = 0;
  for (const auto& c : coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : coeffs) c /= g;
  if (coeffs.back() < 0)
    for (auto& c : coeffs) c = -c;
}

Integer IntPoly::height() const {
  Integer h = 0;
  for (const auto& c : coeffs) {
    Integer a = abs(c);
    if (a > h) h = a;
  }
  return h;
}

RationalPoly IntPoly::as_rational() const {
  RationalPoly r;
  for (const auto& c : coeffs) r.coeffs.emplace_back(c);
  r.normalize();
  return r;
}

std::string IntPoly::to_string(const std::string& var) const {
  RationalPoly r = as_rational();
  return r.to_string(var);
}

} // namespace modcol
