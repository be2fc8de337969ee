#include "kha/laurent_poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace kha {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(Symbol s, int e) {
  Monomial m;
  if (e != 0) m.e_.emplace_back(s, e);
  return m;
}

Monomial Monomial::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  Monomial m;
  for (auto& [s, e] : entries) {
    if (!m.e_.empty() && m.e_.back().first == s)
      m.e_.back().second += e;
    else
      m.e_.emplace_back(s, e);
    if (m.e_.back().second == 0) m.e_.pop_back();
  }
  return m;
}

int Monomial::exponent(Symbol s) const {
  for (const auto& [v, e] : e_) {
    if (v == s) return e;
    if (v > s) break;
  }
  return 0;
}

long Monomial::degree() const {
  long d = 0;
  for (const auto& [v, e] : e_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.e_.reserve(e_.size() + o.e_.size());
  auto a = e_.begin(), b = o.e_.begin();
  while (a != e_.end() || b != o.e_.end()) {
    if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
      r.e_.push_back(*a++);
    } else if (a == e_.end() || b->first < a->first) {
      r.e_.push_back(*b++);
    } else {
      int e = a->second + b->second;
      if (e != 0) r.e_.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  return r;
}

Monomial Monomial::inverse() const {
  Monomial r = *this;
  for (auto& p : r.e_) p.second = -p.second;
  return r;
}

Monomial Monomial::pow(int n) const {
  if (n == 0) return {};
  Monomial r = *this;
  for (auto& p : r.e_) p.second *= n;
  return r;
}

Monomial Monomial::without(Symbol s) const {
  Monomial r;
  for (const auto& p : e_)
    if (p.first != s) r.e_.push_back(p);
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r;
  auto a = e_.begin(), b = o.e_.begin();
  while (a != e_.end() || b != o.e_.end()) {
    if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
      if (a->second < 0) r.e_.push_back(*a);
      ++a;
    } else if (a == e_.end() || b->first < a->first) {
      if (b->second < 0) r.e_.push_back(*b);
      ++b;
    } else {
      int e = std::min(a->second, b->second);
      if (e != 0) r.e_.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  return r;
}

bool Monomial::divisible_by(const Monomial& o) const {
  auto a = e_.begin(), b = o.e_.begin();
  while (a != e_.end() || b != o.e_.end()) {
    if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
      if (a->second < 0) return false;
      ++a;
    } else if (a == e_.end() || b->first < a->first) {
      if (b->second > 0) return false;
      ++b;
    } else {
      if (a->second < b->second) return false;
      ++a;
      ++b;
    }
  }
  return true;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& [v, e] : e_) {
    h ^= (static_cast<std::size_t>(v) * 0x100000001b3ull) + static_cast<std::size_t>(e) +
         (h << 6) + (h >> 2);
  }
  return h;
}

std::string Monomial::to_string() const {
  if (e_.empty()) return "1";
  std::string out;
  for (const auto& [v, e] : e_) {
    if (!out.empty()) out += "*";
    out += symbol_name(v);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

int compare(const Monomial& a, const Monomial& b) {
  long da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  const auto& x = a.entries();
  const auto& y = b.entries();
  auto i = x.begin(), j = y.begin();
  while (i != x.end() || j != y.end()) {
    Symbol s;
    int ea = 0, eb = 0;
    if (j == y.end() || (i != x.end() && i->first < j->first)) {
      s = i->first;
      ea = i->second;
      ++i;
    } else if (i == x.end() || j->first < i->first) {
      s = j->first;
      eb = j->second;
      ++j;
    } else {
      s = i->first;
      ea = i->second;
      eb = j->second;
      ++i;
      ++j;
    }
    (void)s;
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  return 0;
}

// ------------------------------------------------------------- LaurentPoly

namespace {

bool term_greater(const LaurentPoly::Term& a, const LaurentPoly::Term& b) {
  return compare(a.first, b.first) > 0;
}

}  // namespace

LaurentPoly::LaurentPoly(long c) {
  if (c != 0) t_.emplace_back(Monomial{}, Rational(c));
}

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) t_.emplace_back(Monomial{}, c);
}

LaurentPoly::LaurentPoly(const Monomial& m, const Rational& c) {
  if (c != 0) t_.emplace_back(m, c);
}

LaurentPoly LaurentPoly::var(Symbol s, int e) { return LaurentPoly(Monomial::var(s, e)); }

LaurentPoly pow_var(Symbol s, int e) { return LaurentPoly::var(s, e); }

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  LaurentPoly p;
  p.t_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.t_.empty() && p.t_.back().first == t.first) {
      p.t_.back().second += t.second;
      if (p.t_.back().second == 0) p.t_.pop_back();
    } else if (t.second != 0) {
      p.t_.push_back(std::move(t));
    }
  }
  return p;
}

bool LaurentPoly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_[0].first.is_one());
}

Rational LaurentPoly::constant_value() const {
  for (const auto& t : t_)
    if (t.first.is_one()) return t.second;
  return 0;
}

std::set<Symbol> LaurentPoly::variables() const {
  std::set<Symbol> out;
  for (const auto& t : t_)
    for (const auto& e : t.first.entries()) out.insert(e.first);
  return out;
}

bool LaurentPoly::contains(Symbol s) const {
  for (const auto& t : t_)
    if (t.first.exponent(s) != 0) return true;
  return false;
}

int LaurentPoly::max_exp(Symbol s) const {
  int m = std::numeric_limits<int>::min();
  for (const auto& t : t_) m = std::max(m, t.first.exponent(s));
  return m;
}

int LaurentPoly::min_exp(Symbol s) const {
  int m = std::numeric_limits<int>::max();
  for (const auto& t : t_) m = std::min(m, t.first.exponent(s));
  return m;
}

LaurentPoly LaurentPoly::coeff(Symbol s, int k) const {
  LaurentPoly r;
  for (const auto& t : t_)
    if (t.first.exponent(s) == k) r.t_.emplace_back(t.first.without(s), t.second);
  // removing one symbol with a fixed exponent shifts every degree equally,
  // so the order is preserved
  return r;
}

std::map<int, LaurentPoly> LaurentPoly::coefficients(Symbol s) const {
  std::map<int, LaurentPoly> out;
  for (const auto& t : t_) out[t.first.exponent(s)].t_.emplace_back(t.first.without(s), t.second);
  return out;
}

Rational LaurentPoly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), Term{m, 0}, term_greater);
  if (it != t_.end() && it->first == m) return it->second;
  return 0;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.t_) t.second = -t.second;
  return r;
}

namespace {

std::vector<LaurentPoly::Term> merge(const std::vector<LaurentPoly::Term>& a,
                                     const std::vector<LaurentPoly::Term>& b, bool subtract) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin(), j = b.begin();
  while (i != a.end() || j != b.end()) {
    int c;
    if (i == a.end())
      c = -1;
    else if (j == b.end())
      c = 1;
    else
      c = compare(i->first, j->first);
    if (c > 0) {
      out.push_back(*i++);
    } else if (c < 0) {
      out.emplace_back(j->first, subtract ? Rational(-j->second) : j->second);
      ++j;
    } else {
      Rational s = subtract ? Rational(i->second - j->second) : Rational(i->second + j->second);
      if (s != 0) out.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.t_.empty()) return *this;
  t_ = merge(t_, o.t_, false);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.t_.empty()) return *this;
  t_ = merge(t_, o.t_, true);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.t_.empty() || b.t_.empty()) return {};
  if (b.t_.size() == 1) {
    LaurentPoly r = a.mul_monomial(b.t_[0].first);
    if (b.t_[0].second != 1) r *= b.t_[0].second;
    return r;
  }
  if (a.t_.size() == 1) return b * a;
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.t_.size() * b.t_.size());
  Rational tmp;
  for (const auto& [ma, ca] : a.t_) {
    for (const auto& [mb, cb] : b.t_) {
      tmp = ca * cb;
      auto [it, fresh] = acc.try_emplace(ma * mb, tmp);
      if (!fresh) it->second += tmp;
    }
  }
  LaurentPoly r;
  r.t_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.t_.emplace_back(m, std::move(c));
  std::sort(r.t_.begin(), r.t_.end(), term_greater);
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c == 0) {
    t_.clear();
  } else if (c != 1) {
    for (auto& t : t_) t.second *= c;
  }
  return *this;
}

LaurentPoly LaurentPoly::mul_monomial(const Monomial& m) const {
  LaurentPoly r;
  r.t_.reserve(t_.size());
  for (const auto& t : t_) r.t_.emplace_back(t.first * m, t.second);
  // multiplying by a monomial preserves graded-lex order
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly result(1), base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::truncate_above(Symbol s, int bound) const {
  LaurentPoly r;
  for (const auto& t : t_)
    if (t.first.exponent(s) <= bound) r.t_.push_back(t);
  return r;
}

LaurentPoly LaurentPoly::filter(const std::function<bool(const Monomial&)>& keep) const {
  LaurentPoly r;
  for (const auto& t : t_)
    if (keep(t.first)) r.t_.push_back(t);
  return r;
}

LaurentPoly LaurentPoly::substitute(Symbol s, const LaurentPoly& v) const {
  if (!contains(s)) return *this;
  std::map<int, LaurentPoly> parts = coefficients(s);
  LaurentPoly out;
  for (auto& [k, c] : parts) {
    LaurentPoly vk;
    if (k >= 0) {
      vk = v.pow(static_cast<unsigned>(k));
    } else {
      if (!v.is_monomial())
        throw std::invalid_argument("substitute: negative power of a non-monomial");
      Rational inv = Rational(1) / v.leading().second;
      vk = LaurentPoly(v.leading().first.pow(k), 1);
      for (int i = 0; i < -k; ++i) vk *= inv;
    }
    out += c * vk;
  }
  return out;
}

LaurentPoly LaurentPoly::substitute_monomials(
    const std::map<Symbol, std::pair<Rational, Monomial>>& sub) const {
  std::vector<Term> out;
  out.reserve(t_.size());
  for (const auto& [m, c] : t_) {
    std::vector<Monomial::Entry> rest;
    Monomial extra;
    Rational coef = c;
    for (const auto& [v, e] : m.entries()) {
      auto it = sub.find(v);
      if (it == sub.end()) {
        rest.emplace_back(v, e);
        continue;
      }
      extra = extra * it->second.second.pow(e);
      const Rational& a = it->second.first;
      if (a != 1) {
        mpz_class num, den;
        unsigned ue = static_cast<unsigned>(e < 0 ? -e : e);
        mpz_pow_ui(num.get_mpz_t(), a.get_num_mpz_t(), ue);
        mpz_pow_ui(den.get_mpz_t(), a.get_den_mpz_t(), ue);
        Rational p = e < 0 ? Rational(den, num) : Rational(num, den);
        p.canonicalize();
        coef *= p;
      }
    }
    out.emplace_back(Monomial::from_entries(std::move(rest)) * extra, std::move(coef));
  }
  return from_terms(std::move(out));
}

LaurentPoly LaurentPoly::rename(const std::map<Symbol, Symbol>& ren) const {
  std::vector<Term> out;
  out.reserve(t_.size());
  for (const auto& [m, c] : t_) {
    std::vector<Monomial::Entry> es;
    es.reserve(m.entries().size());
    for (const auto& [v, e] : m.entries()) {
      auto it = ren.find(v);
      es.emplace_back(it == ren.end() ? v : it->second, e);
    }
    out.emplace_back(Monomial::from_entries(std::move(es)), c);
  }
  return from_terms(std::move(out));
}

Monomial LaurentPoly::monomial_content() const {
  if (t_.empty()) return {};
  Monomial g = t_[0].first;
  for (std::size_t i = 1; i < t_.size(); ++i) g = g.gcd(t_[i].first);
  return g;
}

Rational LaurentPoly::rational_content() const {
  if (t_.empty()) return 1;
  mpz_class g = 0, l = 1;
  for (const auto& t : t_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.get_den_mpz_t());
  }
  g = abs(g);
  Rational c(g, l);
  c.canonicalize();
  if (t_[0].second < 0) c = -c;
  return c;
}

LaurentPoly LaurentPoly::unit_normal() const {
  if (t_.empty()) return {};
  LaurentPoly r = mul_monomial(monomial_content().inverse());
  r *= Rational(1) / rational_content();
  return r;
}

bool LaurentPoly::operator<(const LaurentPoly& o) const {
  if (t_.size() != o.t_.size()) return t_.size() < o.t_.size();
  for (std::size_t i = 0; i < t_.size(); ++i) {
    int c = compare(t_[i].first, o.t_[i].first);
    if (c != 0) return c < 0;
    if (t_[i].second != o.t_[i].second) return t_[i].second < o.t_[i].second;
  }
  return false;
}

std::size_t LaurentPoly::hash() const {
  std::size_t h = t_.size();
  for (const auto& t : t_) {
    h ^= t.first.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= std::hash<std::string>{}(t.second.get_str()) + (h << 3);
  }
  return h;
}

std::string LaurentPoly::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << kha::to_string(a);
    } else {
      if (a != 1) os << kha::to_string(a) << "*";
      os << m.to_string();
    }
  }
  return os.str();
}

// --------------------------------------------------------------- division

namespace {

// Division of polynomials (all exponents >= 0) by leading terms.
std::optional<LaurentPoly> divide_polynomial(LaurentPoly r, const LaurentPoly& b) {
  const auto& [lm, lc] = b.leading();
  std::vector<LaurentPoly::Term> q;
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.leading();
    if (!rm.divisible_by(lm)) return std::nullopt;
    Monomial m = rm * lm.inverse();
    Rational c = rc / lc;
    q.emplace_back(m, c);
    r -= b.mul_monomial(m) * c;
  }
  return LaurentPoly::from_terms(std::move(q));
}

}  // namespace

std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return LaurentPoly{};
  if (b.is_monomial()) {
    LaurentPoly r = a.mul_monomial(b.leading().first.inverse());
    r *= Rational(1) / b.leading().second;
    return r;
  }
  Monomial ma = a.monomial_content(), mb = b.monomial_content();
  LaurentPoly pa = a.mul_monomial(ma.inverse());
  LaurentPoly pb = b.mul_monomial(mb.inverse());
  auto q = divide_polynomial(std::move(pa), pb);
  if (!q) return std::nullopt;
  return q->mul_monomial(ma * mb.inverse());
}

LaurentPoly divide_by_difference(const LaurentPoly& p, Symbol x, Symbol y) {
  if (p.is_zero()) return {};
  std::map<int, LaurentPoly> c = p.coefficients(x);
  int hi = c.rbegin()->first, lo = c.begin()->first;
  LaurentPoly ypoly = LaurentPoly::var(y);
  std::vector<LaurentPoly::Term> out;
  LaurentPoly qk;  // Q_{k}, running downwards from k = hi
  for (int k = hi; k >= lo; --k) {
    // C_k = Q_{k-1} - y Q_k
    LaurentPoly ck;
    auto it = c.find(k);
    if (it != c.end()) ck = it->second;
    LaurentPoly qkm1 = ck + ypoly * qk;
    if (k == lo) {
      if (!qkm1.is_zero()) throw std::domain_error("divide_by_difference: not exact");
      break;
    }
    for (const auto& [m, cc] : qkm1.terms()) out.emplace_back(m * Monomial::var(x, k - 1), cc);
    qk = std::move(qkm1);
  }
  return LaurentPoly::from_terms(std::move(out));
}

// -------------------------------------------------------------------- gcd

namespace {

using Uni = std::vector<LaurentPoly>;

Uni to_uni(const LaurentPoly& p, Symbol x) {
  std::map<int, LaurentPoly> c = p.coefficients(x);
  if (c.begin()->first < 0) throw std::logic_error("to_uni: negative exponent");
  Uni u(static_cast<std::size_t>(c.rbegin()->first + 1));
  for (auto& [k, v] : c) u[static_cast<std::size_t>(k)] = std::move(v);
  return u;
}

LaurentPoly from_uni(const Uni& u, Symbol x) {
  LaurentPoly out;
  for (std::size_t k = 0; k < u.size(); ++k)
    if (!u[k].is_zero()) out += u[k].mul_monomial(Monomial::var(x, static_cast<int>(k)));
  return out;
}

LaurentPoly gcd_normal(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly content_in(const LaurentPoly& p, Symbol x) {
  LaurentPoly g;
  for (auto& [k, c] : p.coefficients(x)) {
    g = g.is_zero() ? c.unit_normal() : gcd_normal(g, c);
    if (g.is_constant()) return LaurentPoly(1);
  }
  return g;
}

LaurentPoly primitive_in(const LaurentPoly& p, Symbol x) {
  LaurentPoly c = content_in(p, x);
  if (c.is_constant()) return p.unit_normal();
  auto q = divide_exact(p, c);
  return q->unit_normal();
}

// Pseudo-remainder of a by b in x; both are polynomials in x.
LaurentPoly prem(const LaurentPoly& a, const LaurentPoly& b, Symbol x) {
  Uni ua = to_uni(a, x), ub = to_uni(b, x);
  while (!ua.empty() && ua.back().is_zero()) ua.pop_back();
  const LaurentPoly& lb = ub.back();
  std::size_t db = ub.size() - 1;
  while (ua.size() > db && !ua.empty()) {
    LaurentPoly la = ua.back();
    std::size_t shift = ua.size() - 1 - db;
    for (auto& c : ua) c = c * lb;
    for (std::size_t k = 0; k < ub.size(); ++k) ua[k + shift] -= la * ub[k];
    while (!ua.empty() && ua.back().is_zero()) ua.pop_back();
    if (!ua.empty()) {
      // keep coefficient growth in check
      LaurentPoly whole = from_uni(ua, x);
      Rational c = whole.rational_content();
      if (c != 1)
        for (auto& v : ua) v *= Rational(1) / c;
    }
  }
  return from_uni(ua, x);
}

// a, b nonzero and in unit normal form.
LaurentPoly gcd_normal(const LaurentPoly& a0, const LaurentPoly& b0) {
  LaurentPoly a = a0.unit_normal(), b = b0.unit_normal();
  if (a.is_constant() || b.is_constant()) return LaurentPoly(1);
  if (a == b) return a;
  std::set<Symbol> va = a.variables(), vb = b.variables();
  for (Symbol s : va)
    if (!vb.count(s)) return gcd_normal(content_in(a, s), b);
  for (Symbol s : vb)
    if (!va.count(s)) return gcd_normal(a, content_in(b, s));
  // all variables shared: pick the one of smallest degree
  Symbol x = *va.begin();
  int best = std::numeric_limits<int>::max();
  for (Symbol s : va) {
    int d = std::max(a.max_exp(s), b.max_exp(s));
    if (d < best) {
      best = d;
      x = s;
    }
  }
  LaurentPoly ca = content_in(a, x), cb = content_in(b, x);
  LaurentPoly g = gcd_normal(ca, cb);
  LaurentPoly pa = ca.is_constant() ? a : *divide_exact(a, ca);
  LaurentPoly pb = cb.is_constant() ? b : *divide_exact(b, cb);
  pa = pa.unit_normal();
  pb = pb.unit_normal();
  if (pa.max_exp(x) < pb.max_exp(x)) std::swap(pa, pb);
  while (true) {
    LaurentPoly r = prem(pa, pb, x);
    if (r.is_zero()) break;
    r = r.unit_normal();
    if (r.max_exp(x) == 0) {
      pb = LaurentPoly(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, x);
  }
  return (g * primitive_in(pb, x)).unit_normal();
}

}  // namespace

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero()) return b.unit_normal();
  if (b.is_zero()) return a.unit_normal();
  return gcd_normal(a, b);
}

}  // namespace kha
