#include "kha/series.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace kha {

namespace {

LaurentPoly invert_var(const LaurentPoly& p, Symbol var) {
  std::map<Symbol, std::pair<Rational, Monomial>> sub;
  sub.emplace(var, std::make_pair(Rational(1), Monomial::var(var, -1)));
  return p.substitute_monomials(sub);
}

Rational rational_pow(const Rational& c, int e) {
  Rational base = e < 0 ? Rational(1) / c : c;
  Rational out = 1;
  for (int i = 0; i < (e < 0 ? -e : e); ++i) out *= base;
  return out;
}

void check_cap(const LaurentPoly& p) {
  if (p.size() > residue_term_cap())
    throw std::length_error("residue engine exceeded KHA_RESIDUE_MAX_TERMS (" +
                            std::to_string(residue_term_cap()) + " terms)");
}

// Product of a and b keeping only var-exponents <= bound.
LaurentPoly mul_truncated(const LaurentPoly& a, const LaurentPoly& b, Symbol var, int bound) {
  std::map<int, LaurentPoly> ca = a.coefficients(var), cb = b.coefficients(var);
  LaurentPoly out;
  for (const auto& [ka, pa] : ca) {
    LaurentPoly acc;
    for (const auto& [kb, pb] : cb) {
      if (ka + kb > bound) break;
      acc += (pa * pb).mul_monomial(Monomial::var(var, kb));
    }
    out += acc.mul_monomial(Monomial::var(var, ka));
    check_cap(out);
  }
  return out;
}

}  // namespace

std::size_t residue_term_cap() {
  static const std::size_t cap = [] {
    const char* env = std::getenv("KHA_RESIDUE_MAX_TERMS");
    if (env && *env) return static_cast<std::size_t>(std::stoull(env));
    return static_cast<std::size_t>(20000000);
  }();
  return cap;
}

// ------------------------------------------------------------------ series

int LaurentSeries::exponent(std::size_t k) const {
  int e = valuation + static_cast<int>(k);
  return point == Point::Zero ? e : -e;
}

RatFun LaurentSeries::sum() const {
  RatFun out;
  for (std::size_t k = 0; k < coefficients.size(); ++k)
    out += coefficients[k] * RatFun(LaurentPoly::var(var, exponent(k)));
  return out;
}

LaurentSeries series_expand(const RatFun& f, Symbol var, Point point, int order) {
  LaurentSeries s;
  s.var = var;
  s.point = point;
  s.order = order;
  if (f.is_zero()) {
    s.valuation = order;
    return s;
  }
  LaurentPoly num = f.num(), den = f.den();
  if (point == Point::Infinity) {
    num = invert_var(num, var);
    den = invert_var(den, var);
  }
  std::map<int, LaurentPoly> a = num.coefficients(var), b = den.coefficients(var);
  int nlo = a.begin()->first, dlo = b.begin()->first;
  s.valuation = nlo - dlo;
  int count = order - s.valuation;
  if (count <= 0) {
    s.valuation = order;
    return s;
  }
  auto coef = [](const std::map<int, LaurentPoly>& m, int k) {
    auto it = m.find(k);
    return it == m.end() ? RatFun() : RatFun(it->second);
  };
  RatFun b0inv = coef(b, dlo).inverse();
  for (int j = 0; j < count; ++j) {
    RatFun c = coef(a, nlo + j);
    for (int l = 1; l <= j; ++l) {
      if (!b.count(dlo + l)) continue;
      c -= coef(b, dlo + l) * s.coefficients[static_cast<std::size_t>(j - l)];
    }
    s.coefficients.push_back(c * b0inv);
  }
  return s;
}

// ------------------------------------------------------------ FactoredRat

FactoredRat FactoredRat::from(const RatFun& f) {
  FactoredRat r(f.num());
  r.divide_by(f.den(), 1);
  return r;
}

void FactoredRat::divide_by(const LaurentPoly& f, int e) {
  if (e == 0) return;
  if (f.is_zero()) throw std::domain_error("FactoredRat: division by zero");
  Monomial m = f.monomial_content();
  Rational c = f.rational_content();
  LaurentPoly unit = f.unit_normal();
  num_ = num_.mul_monomial(m.pow(-e)) * rational_pow(c, -e);
  if (unit.is_constant()) return;
  if (e < 0) {
    num_ *= unit.pow(static_cast<unsigned>(-e));
    return;
  }
  den_[unit] += e;
}

RatFun FactoredRat::to_ratfun() const {
  LaurentPoly den(1);
  for (const auto& [f, e] : den_) den *= f.pow(static_cast<unsigned>(e));
  return RatFun::normalize(num_, den);
}

FactoredRat FactoredRat::constant_term(Symbol var) const {
  FactoredRat out;
  std::vector<std::pair<LaurentPoly, int>> involved;
  for (const auto& [f, e] : den_) {
    if (f.contains(var))
      involved.emplace_back(f, e);
    else
      out.den_.emplace(f, e);
  }
  if (num_.is_zero()) return out;
  LaurentPoly p = num_.truncate_above(var, 0);
  if (p.is_zero()) return out;
  int r = -p.min_exp(var);
  LaurentPoly scale(1);
  for (const auto& [f, e] : involved) {
    // unit-normal factors have var-valuation 0: f = d0 + g with val(g) >= 1
    LaurentPoly d0 = f.coeff(var, 0);
    LaurentPoly g = f - d0;
    Monomial um = d0.monomial_content();
    Rational uc = d0.rational_content();
    LaurentPoly d0n = d0.unit_normal();
    LaurentPoly rr = g.mul_monomial(um.inverse()) * (Rational(1) / uc);
    scale = scale.mul_monomial(um.pow(-e)) * rational_pow(uc, -e);
    // (d0n + rr)^{-e} = d0n^{-e-r} * sum_j binom(-e, j) rr^j d0n^{r-j}
    LaurentPoly series;
    LaurentPoly rpow(1);
    bool unit_d0 = d0n.is_constant();
    std::vector<LaurentPoly> d0pows;
    if (!unit_d0) {
      d0pows.push_back(LaurentPoly(1));
      for (int j = 1; j <= r; ++j) d0pows.push_back(d0pows.back() * d0n);
    }
    for (int j = 0; j <= r; ++j) {
      if (rpow.is_zero()) break;
      Rational bc = binomial(e + j - 1, j);
      if (j % 2) bc = -bc;
      LaurentPoly term = rpow * bc;
      if (!unit_d0) term *= d0pows[static_cast<std::size_t>(r - j)];
      series += term;
      if (j < r) rpow = mul_truncated(rpow, rr, var, r);
    }
    p = mul_truncated(p, series, var, 0);
    if (p.is_zero()) {
      out.num_ = LaurentPoly();
      return out;
    }
    if (!unit_d0) out.den_[d0n] += e + r;
  }
  out.num_ = p.coeff(var, 0) * scale;
  check_cap(out.num_);
  return out;
}

FactoredRat constant_term_iterated(FactoredRat f, const std::vector<Symbol>& vars,
                                   Region region) {
  if (region == Region::Increasing) {
    for (Symbol v : vars) f = f.constant_term(v);
  } else {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = f.constant_term(*it);
  }
  return f;
}

RatFun constant_term_iterated(const RatFun& f, const std::vector<Symbol>& vars, Region region) {
  return constant_term_iterated(FactoredRat::from(f), vars, region).to_ratfun();
}

// ------------------------------------------------------------- xi scaling

long xi_degree(const RatFun& f, Symbol xi, Point at) {
  if (f.is_zero()) return at == Point::Infinity ? kNegInfinity : kPosInfinity;
  if (at == Point::Infinity) return long(f.num().max_exp(xi)) - f.den().max_exp(xi);
  return long(f.num().min_exp(xi)) - f.den().min_exp(xi);
}

RatFun limit_leading(const RatFun& f, Symbol xi, int shift, Point at) {
  if (f.is_zero()) return RatFun();
  long d = xi_degree(f, xi, at);
  if (at == Point::Infinity) {
    if (d > shift)
      throw std::domain_error("limit_leading: degree " + std::to_string(d) +
                              " exceeds shift " + std::to_string(shift));
    if (d < shift) return RatFun();
    return RatFun::normalize(f.num().coeff(xi, f.num().max_exp(xi)),
                             f.den().coeff(xi, f.den().max_exp(xi)));
  }
  if (d < shift)
    throw std::domain_error("limit_leading: valuation " + std::to_string(d) +
                            " below shift " + std::to_string(shift));
  if (d > shift) return RatFun();
  return RatFun::normalize(f.num().coeff(xi, f.num().min_exp(xi)),
                           f.den().coeff(xi, f.den().min_exp(xi)));
}

}  // namespace kha
