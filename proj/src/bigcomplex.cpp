#include "modcol/bigcomplex.hpp"

#include <sstream>

namespace modcol {

std::string BigFloat::to_string(size_t digits) const {
  if (digits == 0) digits = static_cast<size_t>(prec_bits() * 0.3010) + 2;
  char* s = nullptr;
  mpfr_exp_t e;
  s = mpfr_get_str(nullptr, &e, 10, digits, x_, MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  std::ostringstream os;
  bool neg = !mant.empty() && mant[0] == '-';
  std::string body = neg ? mant.substr(1) : mant;
  os << (neg ? "-" : "") << "0." << body << "e" << e;
  return os.str();
}

BigComplex BigComplex::pow(unsigned long e) const {
  BigComplex acc(1, prec_bits());
  BigComplex base = *this;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

std::string BigComplex::to_string(size_t digits) const {
  return re_.to_string(digits) + (im_.sign() < 0 ? " - " : " + ") + im_.abs().to_string(digits) + "*i";
}

BigComplex nome_from_tau(const BigComplex& tau, long width_h) {
  long prec = tau.prec_bits();
  BigFloat two_pi = BigFloat::pi(prec).mul_2exp(1);
  BigFloat h(width_h, prec);
  // q = e^{2 pi i (x + iy)/h} = e^{-2 pi y / h} * (cos + i sin)(2 pi x / h)
  BigFloat scale = ((two_pi * (-tau.im())) / h).exp();
  BigFloat angle = (two_pi * tau.re()) / h;
  return BigComplex::cis(angle).scaled(scale);
}

} // namespace modcol
