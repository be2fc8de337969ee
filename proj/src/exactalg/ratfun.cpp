#include "kha/ratfun.hpp"

#include <stdexcept>

namespace kha {

RatFun RatFun::normalize(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw std::domain_error("RatFun: zero denominator");
  if (num.is_zero()) return RatFun();
  if (den.is_monomial()) return from_coprime(num, den);
  LaurentPoly g = gcd(num, den);
  if (g.is_constant()) return from_coprime(num, den);
  return from_coprime(*divide_exact(num, g), *divide_exact(den, g));
}

RatFun RatFun::from_coprime(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw std::domain_error("RatFun: zero denominator");
  Monomial m = den.monomial_content().inverse();
  Rational c = Rational(1) / den.rational_content();
  RatFun r;
  r.num_ = num.mul_monomial(m) * c;
  r.den_ = den.mul_monomial(m) * c;
  if (r.den_.is_constant()) {
    r.num_ *= Rational(1) / r.den_.constant_value();
    r.den_ = LaurentPoly(1);
  }
  return r;
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw std::domain_error("RatFun: inverse of zero");
  return normalize(den_, num_);
}

RatFun RatFun::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  RatFun r;
  r.num_ = num_.pow(static_cast<unsigned>(n));
  r.den_ = den_.pow(static_cast<unsigned>(n));
  return r;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.is_polynomial()) return RatFun(a.num_ + b.num_);
    return RatFun::normalize(a.num_ + b.num_, a.den_);
  }
  if (a.is_polynomial()) return RatFun::normalize(a.num_ * b.den_ + b.num_, b.den_);
  if (b.is_polynomial()) return RatFun::normalize(a.num_ + b.num_ * a.den_, a.den_);
  LaurentPoly g = gcd(a.den_, b.den_);
  LaurentPoly da = *divide_exact(a.den_, g), db = *divide_exact(b.den_, g);
  return RatFun::normalize(a.num_ * db + b.num_ * da, a.den_ * db);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero() || b.is_zero()) return RatFun();
  if (a.is_polynomial() && b.is_polynomial()) {
    RatFun r;
    r.num_ = a.num_ * b.num_;
    return r;
  }
  LaurentPoly g1 = b.is_polynomial() ? LaurentPoly(1) : gcd(a.num_, b.den_);
  LaurentPoly g2 = a.is_polynomial() ? LaurentPoly(1) : gcd(b.num_, a.den_);
  LaurentPoly an = g1.is_constant() ? a.num_ : *divide_exact(a.num_, g1);
  LaurentPoly bd = g1.is_constant() ? b.den_ : *divide_exact(b.den_, g1);
  LaurentPoly bn = g2.is_constant() ? b.num_ : *divide_exact(b.num_, g2);
  LaurentPoly ad = g2.is_constant() ? a.den_ : *divide_exact(a.den_, g2);
  return RatFun::from_coprime(an * bn, ad * bd);
}

RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }

bool RatFun::equals_by_cross_multiplication(const RatFun& o) const {
  return num_ * o.den_ == o.num_ * den_;
}

RatFun RatFun::substitute(Symbol s, const RatFun& v) const {
  if (!num_.contains(s) && !den_.contains(s)) return *this;
  auto eval = [&](const LaurentPoly& p) {
    RatFun out;
    for (auto& [k, c] : p.coefficients(s)) out += RatFun(c) * v.pow(k);
    return out;
  };
  return eval(num_) / eval(den_);
}

std::set<Symbol> RatFun::variables() const {
  std::set<Symbol> v = num_.variables();
  for (Symbol s : den_.variables()) v.insert(s);
  return v;
}

std::string RatFun::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.size() > 1) n = "(" + n + ")";
  return n + "/(" + den_.to_string() + ")";
}

}  // namespace kha
