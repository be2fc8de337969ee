#pragma once

#include <string>

#include "kha/laurent_poly.hpp"

namespace kha {

/// Reduced quotient num/den of Laurent polynomials. The denominator is a
/// polynomial in unit normal form (no monomial factor, integer coefficients
/// with gcd 1, positive leading coefficient), so equal functions have equal
/// representatives.
class RatFun {
 public:
  RatFun() : den_(1) {}
  RatFun(long c) : num_(c), den_(1) {}  // NOLINT(runtime/explicit)
  RatFun(const Rational& c) : num_(c), den_(1) {}  // NOLINT(runtime/explicit)
  RatFun(const LaurentPoly& p) : num_(p), den_(1) {}  // NOLINT(runtime/explicit)

  /// Canonical representative of num/den. Throws std::domain_error on den = 0.
  static RatFun normalize(const LaurentPoly& num, const LaurentPoly& den);
  /// Skips the gcd: the caller guarantees num and den are coprime.
  static RatFun from_coprime(const LaurentPoly& num, const LaurentPoly& den);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return den_.is_constant() && num_.is_constant(); }

  RatFun operator-() const;
  RatFun inverse() const;
  RatFun pow(int n) const;

  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

  bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFun& o) const { return !(*this == o); }
  /// Cross-multiplication test; agrees with == on canonical values.
  bool equals_by_cross_multiplication(const RatFun& o) const;

  RatFun substitute(Symbol s, const RatFun& v) const;
  std::set<Symbol> variables() const;

  /// Text form in the coefficient grammar, e.g. "(q^2 - 1)/(q*t - 1)".
  std::string to_string() const;

 private:
  LaurentPoly num_, den_;
};

}  // namespace kha
