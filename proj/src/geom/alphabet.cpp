#include <sstream>
#include <stdexcept>

#include "frac.hpp"

namespace kha {

Alphabet Alphabet::declare(const Quiver& q, const DimVector& v, const DimVector& w,
                           const std::string& tag) {
  check_compatible(q, v);
  check_compatible(q, w);
  if (!v.nonnegative() || !w.nonnegative()) throw std::invalid_argument("negative alphabet size");
  Alphabet a;
  a.v = v;
  a.w = w;
  for (std::size_t i = 0; i < q.size(); ++i) {
    a.x.emplace_back();
    a.framing.emplace_back();
    for (int k = 1; k <= v[i]; ++k)
      a.x.back().push_back(intern("x" + tag + "_" + q.nodes()[i] + "_" + std::to_string(k)));
    for (int k = 1; k <= w[i]; ++k)
      a.framing.back().push_back(intern("w" + tag + "_" + q.nodes()[i] + "_" + std::to_string(k)));
  }
  return a;
}

namespace {

std::vector<Colored> flatten(const std::vector<std::vector<Symbol>>& lists) {
  std::vector<Colored> out;
  for (std::size_t i = 0; i < lists.size(); ++i)
    for (Symbol s : lists[i]) out.emplace_back(i, s);
  return out;
}

}  // namespace

std::vector<Colored> Alphabet::roots() const { return flatten(x); }
std::vector<Colored> Alphabet::framing_roots() const { return flatten(framing); }

FormalAlphabet::FormalAlphabet(const std::vector<Colored>& roots) {
  for (const Colored& c : roots) {
    declare(c.second);
    plus(c);
  }
}

FormalAlphabet& FormalAlphabet::declare(Symbol s) {
  declared_.insert(s);
  return *this;
}

FormalAlphabet& FormalAlphabet::push(const Colored& c, int sign) {
  if (!declared_.count(c.second))
    throw std::invalid_argument("undeclared symbol " + symbol_name(c.second));
  entries_.push_back({c, sign});
  return *this;
}

FormalAlphabet& FormalAlphabet::plus(const Colored& c) { return push(c, 1); }
FormalAlphabet& FormalAlphabet::minus(const Colored& c) { return push(c, -1); }

RatFun plethystic_eval(const PowerSumWord& p, const FormalAlphabet& arg) {
  LaurentPoly acc(1);
  for (const auto& [node, d] : p) {
    LaurentPoly pd;
    for (const auto& e : arg.entries())
      if (e.root.first == node) pd += LaurentPoly(Monomial::var(e.root.second, d), e.sign);
    acc *= pd;
    if (acc.is_zero()) break;
  }
  return RatFun(acc);
}

KClass KClass::one() { return KClass{{{PowerSumWord{}, RatFun(1)}}}; }
KClass KClass::word(const PowerSumWord& w) { return KClass{{{w, RatFun(1)}}}; }

KClass KClass::parse(const Quiver& q, const std::string& text) {
  KClass out;
  std::stringstream terms(text);
  std::string term;
  while (std::getline(terms, term, '+')) {
    PowerSumWord w;
    std::stringstream factors(term);
    std::string f;
    bool unit = false;
    while (std::getline(factors, f, '*')) {
      f.erase(0, f.find_first_not_of(' '));
      f.erase(f.find_last_not_of(' ') + 1);
      if (f == "1") {
        unit = true;
        continue;
      }
      auto open = f.find('[');
      if (f.size() < 4 || f[0] != 'p' || open == std::string::npos || f.back() != ']')
        throw std::invalid_argument("bad power-sum factor '" + f + "' in '" + text + "'");
      int d = 0;
      try {
        std::size_t used = 0;
        d = std::stoi(f.substr(1, open - 1), &used);
        if (used != open - 1) throw std::invalid_argument("degree");
      } catch (const std::exception&) {
        throw std::invalid_argument("bad power-sum degree in '" + f + "'");
      }
      w.emplace_back(q.index(f.substr(open + 1, f.size() - open - 2)), d);
    }
    if (w.empty() && !unit) throw std::invalid_argument("empty power-sum term in '" + text + "'");
    out.terms.emplace_back(std::move(w), RatFun(1));
  }
  if (out.terms.empty()) throw std::invalid_argument("empty power-sum expression");
  return out;
}

std::string KClass::to_string(const Quiver& q) const {
  if (terms.empty()) return "0";
  std::string s;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (t) s += " + ";
    const auto& [w, c] = terms[t];
    if (c != RatFun(1)) s += "(" + c.to_string() + ")*";
    if (w.empty()) s += "1";
    for (std::size_t k = 0; k < w.size(); ++k)
      s += (k ? "*p" : "p") + std::to_string(w[k].second) + "[" + q.nodes()[w[k].first] + "]";
  }
  return s;
}

RatFun KClass::evaluate(const FormalAlphabet& arg) const {
  RatFun acc(0);
  for (const auto& [w, c] : terms) acc += c * plethystic_eval(w, arg);
  return acc;
}

RatFun wedge_star(const std::vector<std::pair<Monomial, int>>& arg) {
  detail::Frac f;
  for (const auto& [m, mult] : arg) f.mul(LaurentPoly(1) - LaurentPoly(m), mult);
  return f.to_ratfun();
}

RatFun wedge_star(const FormalAlphabet& A, const std::vector<Colored>& W, const Monomial& scale) {
  return detail::wedge_frac(A, W, scale).to_ratfun();
}

RatFun zeta_tilde(const Quiver& q, const FormalAlphabet& A, const FormalAlphabet& B) {
  return detail::zeta_tilde_frac(q, A, B).to_ratfun();
}

namespace detail {

Frac wedge_frac(const FormalAlphabet& A, const std::vector<Colored>& W, const Monomial& scale) {
  Frac f;
  for (const auto& e : A.entries())
    for (const auto& [j, w] : W)
      if (j == e.root.first)
        f.mul(LaurentPoly(1) - LaurentPoly(scale * Monomial::var(e.root.second) * Monomial::var(w, -1)),
              e.sign);
  return f;
}

Frac zeta_tilde_frac(const Quiver& q, const FormalAlphabet& A, const FormalAlphabet& B) {
  Frac f;
  for (const auto& a : A.entries())
    for (const auto& b : B.entries()) {
      if (a.root.second == b.root.second) continue;
      BinomialRatio k = kernel_parts(q, Kernel::ZetaTilde, a.root.first, b.root.first);
      Monomial x = Monomial::var(a.root.second) * Monomial::var(b.root.second, -1);
      const int s = a.sign * b.sign;
      for (const Binomial& t : k.num) f.mul(t.at(x), s);
      for (const Binomial& t : k.den) f.mul(t.at(x), -s);
    }
  return f;
}

Frac evaluate_frac(const KClass& c, const FormalAlphabet& arg) {
  std::vector<std::pair<Frac, int>> terms;
  for (const auto& [w, coef] : c.terms) {
    Frac t(plethystic_eval(w, arg).num());
    t.mul(coef.num());
    t.mul(coef.den(), -1);
    terms.emplace_back(std::move(t), 1);
  }
  return Frac::sum(terms);
}

}  // namespace detail

}  // namespace kha
