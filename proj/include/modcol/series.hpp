#ifndef MODCOL_SERIES_HPP
#define MODCOL_SERIES_HPP

#include "modcol/bigcomplex.hpp"
#include "modcol/error.hpp"
#include "modcol/rational.hpp"

#include <string>
#include <vector>

namespace modcol {

namespace detail {
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline BigComplex zero_like(const BigComplex& m) { return BigComplex(m.prec_bits()); }
inline BigComplex one_like(const BigComplex& m) { return BigComplex(1, m.prec_bits()); }
inline bool exactly_zero(const Rational& x) { return x == 0; }
inline bool exactly_zero(const BigComplex& x) { return x.is_zero(); }
inline Rational from_long(long v, const Rational&) { return Rational(v); }
inline BigComplex from_long(long v, const BigComplex& m) { return BigComplex(v, m.prec_bits()); }
} // namespace detail

// Polynomial truncated at a fixed order: coefficients of t^0 .. t^{order-1}.
// Truncation order shrinks to the min of the operands under multiplication
// and composition, mirroring how Taylor data degrades.
template <typename T>
class TruncatedSeries {
public:
  TruncatedSeries() = default;

  TruncatedSeries(std::vector<T> coeffs, std::string variable_tag)
      : coeffs_(std::move(coeffs)), tag_(std::move(variable_tag)) {
    if (coeffs_.empty()) throw Error("Domain", "series must have order >= 1");
  }

  static TruncatedSeries zero(int order, const T& model, std::string tag = "t") {
    std::vector<T> c(static_cast<size_t>(order), detail::zero_like(model));
    return TruncatedSeries(std::move(c), std::move(tag));
  }
  static TruncatedSeries constant(const T& value, int order, std::string tag = "t") {
    TruncatedSeries s = zero(order, value, std::move(tag));
    s.coeffs_[0] = value;
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()); }
  const std::string& variable_tag() const { return tag_; }
  void set_variable_tag(std::string tag) { tag_ = std::move(tag); }

  const T& operator[](int i) const { return coeffs_.at(static_cast<size_t>(i)); }
  T& at(int i) { return coeffs_.at(static_cast<size_t>(i)); }
  const std::vector<T>& coeffs() const { return coeffs_; }

  TruncatedSeries truncated(int order) const {
    if (order >= this->order()) return *this;
    std::vector<T> c(coeffs_.begin(), coeffs_.begin() + order);
    return TruncatedSeries(std::move(c), tag_);
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    int n = std::min(a.order(), b.order());
    TruncatedSeries r = a.truncated(n);
    for (int i = 0; i < n; ++i) r.coeffs_[i] += b.coeffs_[i];
    return r;
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    int n = std::min(a.order(), b.order());
    TruncatedSeries r = a.truncated(n);
    for (int i = 0; i < n; ++i) r.coeffs_[i] -= b.coeffs_[i];
    return r;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    int n = std::min(a.order(), b.order());
    TruncatedSeries r = zero(n, a.coeffs_[0], a.tag_);
    for (int i = 0; i < n; ++i) {
      if (detail::exactly_zero(a.coeffs_[i])) continue;
      for (int j = 0; i + j < n; ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
  }
  TruncatedSeries operator-() const {
    TruncatedSeries r = *this;
    for (auto& c : r.coeffs_) c = detail::zero_like(c) - c;
    return r;
  }

  TruncatedSeries scaled(const T& s) const {
    TruncatedSeries r = *this;
    for (auto& c : r.coeffs_) c = c * s;
    return r;
  }

  // Multiply by (c0 + c1 t); keeps the order. Cheap path for Horner loops.
  TruncatedSeries mul_linear(const T& c0, const T& c1) const {
    int n = order();
    TruncatedSeries r = zero(n, coeffs_[0], tag_);
    for (int i = 0; i < n; ++i) {
      r.coeffs_[i] += coeffs_[i] * c0;
      if (i + 1 < n) r.coeffs_[i + 1] += coeffs_[i] * c1;
    }
    return r;
  }

  // d/dt; the result is known one order lower.
  TruncatedSeries derivative() const {
    if (order() == 1) return zero(1, coeffs_[0], tag_);
    std::vector<T> c;
    c.reserve(static_cast<size_t>(order() - 1));
    for (int i = 1; i < order(); ++i) c.push_back(coeffs_[i] * detail::from_long(i, coeffs_[0]));
    return TruncatedSeries(std::move(c), tag_);
  }

  // Multiplicative inverse; requires a unit constant term.
  TruncatedSeries inverse() const {
    if (detail::exactly_zero(coeffs_[0]))
      throw Error("Domain", "series inverse requires unit constant term");
    int n = order();
    TruncatedSeries r = zero(n, coeffs_[0], tag_);
    T inv0 = detail::one_like(coeffs_[0]);
    inv0 = inv0 / coeffs_[0];
    r.coeffs_[0] = inv0;
    for (int k = 1; k < n; ++k) {
      T acc = detail::zero_like(coeffs_[0]);
      for (int i = 1; i <= k; ++i) {
        if (i < order()) acc += coeffs_[i] * r.coeffs_[k - i];
      }
      r.coeffs_[k] = (detail::zero_like(acc) - acc) * inv0;
    }
    return r;
  }

  TruncatedSeries pow(unsigned long e) const {
    TruncatedSeries acc = constant(detail::one_like(coeffs_[0]), order(), tag_);
    TruncatedSeries base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  // this(g(t)) for g with zero constant term.
  TruncatedSeries compose(const TruncatedSeries& g) const {
    if (!detail::exactly_zero(g.coeffs_[0]))
      throw Error("Domain", "composition requires zero constant term");
    int n = std::min(order(), g.order());
    TruncatedSeries r = constant(coeffs_[order() - 1], n, g.tag_);
    for (int i = order() - 2; i >= 0; --i) {
      r = r * g;
      r.coeffs_[0] += coeffs_[i];
    }
    return r;
  }

  T eval(const T& x) const {
    T acc = detail::zero_like(x);
    for (int i = order() - 1; i >= 0; --i) acc = acc * x + coeffs_[i];
    return acc;
  }

private:
  std::vector<T> coeffs_;
  std::string tag_ = "t";
};

using ComplexSeries = TruncatedSeries<BigComplex>;
using RationalSeries = TruncatedSeries<Rational>;

} // namespace modcol

#endif
