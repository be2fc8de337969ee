#include "frac.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kha::detail {

void Frac::mul(const LaurentPoly& f, int e) {
  if (e == 0) return;
  if (f.is_zero()) {
    if (e < 0) throw std::domain_error("division by zero");
    num_ = LaurentPoly();
    return;
  }
  Monomial m = f.monomial_content();
  Rational c = f.rational_content();
  Rational ce = 1;
  for (int k = 0; k < std::abs(e); ++k) ce *= c;
  num_ = num_.mul_monomial(m.pow(e)) * (e > 0 ? ce : Rational(1) / ce);
  LaurentPoly u = f.unit_normal();
  if (u.is_constant()) return;
  if (e > 0) {
    auto it = den_.find(u);
    int cancel = it == den_.end() ? 0 : std::min(e, it->second);
    if (cancel) {
      if ((it->second -= cancel) == 0) den_.erase(it);
      e -= cancel;
    }
    if (e) numf_[u] += e;
  } else {
    e = -e;
    auto it = numf_.find(u);
    int cancel = it == numf_.end() ? 0 : std::min(e, it->second);
    if (cancel) {
      if ((it->second -= cancel) == 0) numf_.erase(it);
      e -= cancel;
    }
    if (e) den_[u] += e;
  }
}

Frac& Frac::operator*=(const Frac& o) {
  num_ *= o.num_;
  for (const auto& [f, e] : o.numf_) mul(f, e);
  for (const auto& [f, e] : o.den_) mul(f, -e);
  return *this;
}

Frac Frac::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of zero");
  Frac r;
  for (const auto& [f, e] : den_) r.mul(f, e);
  for (const auto& [f, e] : numf_) r.mul(f, -e);
  if (!num_.is_monomial()) r.mul(num_, -1);
  else r.num_ = LaurentPoly(num_.leading().first.inverse(), Rational(1) / num_.leading().second);
  return r;
}

namespace {

// c1*m1 + c2*m2 with m1/m2 primitive is irreducible in the Laurent ring.
bool irreducible_binomial(const LaurentPoly& f) {
  if (f.size() != 2) return false;
  Monomial r = f.terms()[0].first * f.terms()[1].first.inverse();
  long g = 0;
  for (const auto& [s, e] : r.entries()) g = std::gcd(g, static_cast<long>(std::abs(e)));
  return g == 1;
}

}  // namespace

RatFun Frac::to_ratfun() const {
  LaurentPoly n = num_, d(1);
  for (const auto& [f, e] : numf_) n *= f.pow(static_cast<unsigned>(e));
  if (n.is_zero()) return RatFun();
  bool coprime = true;
  for (const auto& [f, e] : den_) {
    int left = e;
    for (; left > 0; --left) {
      auto q = divide_exact(n, f);
      if (!q) break;
      n = std::move(*q);
    }
    if (left) d *= f.pow(static_cast<unsigned>(left));
    coprime = coprime && irreducible_binomial(f);
  }
  return coprime ? RatFun::from_coprime(n, d) : RatFun::normalize(n, d);
}

Frac Frac::sum(const std::vector<std::pair<Frac, int>>& terms) {
  Frac out(LaurentPoly(0));
  std::map<LaurentPoly, int> lcm;
  for (const auto& [t, s] : terms) {
    if (t.is_zero()) continue;
    for (const auto& [f, e] : t.den_) lcm[f] = std::max(lcm[f], e);
  }
  for (const auto& [t, s] : terms) {
    if (t.is_zero()) continue;
    LaurentPoly n = t.num_ * Rational(s);
    for (const auto& [f, e] : t.numf_) n *= f.pow(static_cast<unsigned>(e));
    for (const auto& [f, e] : lcm) {
      auto it = t.den_.find(f);
      int have = it == t.den_.end() ? 0 : it->second;
      if (e > have) n *= f.pow(static_cast<unsigned>(e - have));
    }
    out.num_ += n;
  }
  if (!out.num_.is_zero()) out.den_ = lcm;
  return out;
}

bool Frac::equals(const Frac& o) const {
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  Frac r = *this * o.inverse();
  if (!r.num_.is_monomial()) {
    LaurentPoly u = r.num_.unit_normal();
    auto it = r.den_.find(u);
    if (it != r.den_.end()) {
      r.num_ = LaurentPoly(r.num_.monomial_content(), r.num_.rational_content());
      if (--it->second == 0) r.den_.erase(it);
    }
  }
  if (r.numf_.empty() && r.den_.empty()) return r.num_ == LaurentPoly(1);
  return sum({{*this, 1}, {o, -1}}).is_zero();
}

Frac difference(std::vector<Frac> lhs, std::vector<Frac> rhs) {
  auto drop_zero = [](std::vector<Frac>& v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](const Frac& f) { return f.is_zero(); }), v.end());
  };
  drop_zero(lhs);
  drop_zero(rhs);
  std::vector<bool> used(rhs.size(), false);
  std::vector<std::pair<Frac, int>> rest;
  for (const Frac& a : lhs) {
    bool matched = false;
    for (std::size_t k = 0; k < rhs.size() && !matched; ++k)
      if (!used[k] && a.equals(rhs[k])) used[k] = matched = true;
    if (!matched) rest.emplace_back(a, 1);
  }
  for (std::size_t k = 0; k < rhs.size(); ++k)
    if (!used[k]) rest.emplace_back(rhs[k], -1);
  return Frac::sum(rest);
}

}  // namespace kha::detail
