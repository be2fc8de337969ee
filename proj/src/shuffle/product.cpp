#include <algorithm>
#include <functional>
#include <stdexcept>

#include "kha/shuffle.hpp"

namespace kha {

namespace {

// Calls visit(ren) for every product of same-colour permutations.
void for_each_permutation(const VarTable& vt,
                          const std::function<void(const std::map<Symbol, Symbol>&)>& visit) {
  std::vector<std::vector<std::size_t>> perm(vt.colors());
  for (std::size_t i = 0; i < vt.colors(); ++i) {
    perm[i].resize(vt.color(i).size());
    for (std::size_t a = 0; a < perm[i].size(); ++a) perm[i][a] = a;
  }
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vt.colors()) {
      std::map<Symbol, Symbol> ren;
      for (std::size_t c = 0; c < vt.colors(); ++c)
        for (std::size_t a = 0; a < perm[c].size(); ++a)
          if (perm[c][a] != a) ren[vt.at(c, a)] = vt.at(c, perm[c][a]);
      visit(ren);
      return;
    }
    std::sort(perm[i].begin(), perm[i].end());
    do {
      rec(i + 1);
    } while (std::next_permutation(perm[i].begin(), perm[i].end()));
  };
  rec(0);
}

Rational factorial(int n) {
  Rational r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// Renaming G's variables z_{i,b} -> z_{i, nF_i + b}.
std::map<Symbol, Symbol> offset_renaming(const Quiver& q, const DimVector& nF, const DimVector& nG) {
  std::map<Symbol, Symbol> ren;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (int b = 0; b < nG[i]; ++b)
      if (nF[i] > 0) ren[z_symbol(q, i, b)] = z_symbol(q, i, nF[i] + b);
  return ren;
}

// num / prod(factors), each factor kept in unit normal form.
struct Fraction {
  LaurentPoly num;
  std::map<LaurentPoly, int> factors;

  void divide_by(const LaurentPoly& f) {
    LaurentPoly u = f.unit_normal();
    num = *divide_exact(num * u, f);
    if (!u.is_constant()) ++factors[u];
  }
};

}  // namespace

ShuffleElement symmetrize(QuiverPtr q, const LaurentPoly& num,
                          const std::vector<LaurentPoly>& den_factors, const DimVector& hdeg,
                          Side side) {
  VarTable vt(*q, hdeg);
  std::vector<Fraction> terms;
  std::map<LaurentPoly, int> lcm;
  for_each_permutation(vt, [&](const std::map<Symbol, Symbol>& ren) {
    Fraction fr{ren.empty() ? num : num.rename(ren), {}};
    for (const LaurentPoly& f : den_factors) fr.divide_by(ren.empty() ? f : f.rename(ren));
    for (const auto& [f, e] : fr.factors) lcm[f] = std::max(lcm[f], e);
    terms.push_back(std::move(fr));
  });
  LaurentPoly sum;
  for (const Fraction& fr : terms) {
    LaurentPoly t = fr.num;
    for (const auto& [f, e] : lcm) {
      auto it = fr.factors.find(f);
      int have = it == fr.factors.end() ? 0 : it->second;
      for (int k = have; k < e; ++k) t *= f;
    }
    sum += t;
  }
  LaurentPoly den(1);
  for (auto& [f, e] : lcm) {
    for (; e > 0; --e) {
      auto d = divide_exact(sum, f);
      if (!d) break;
      sum = std::move(*d);
    }
    for (int k = 0; k < e; ++k) den *= f;
  }
  RatFun r = RatFun::normalize(sum, den);
  for (Symbol s : r.den().variables())
    if (vt.is_z(s))
      throw std::domain_error("symmetrization leaves a pole in " + symbol_name(s));
  return ShuffleElement(std::move(q), hdeg, r.num(), r.den(), side);
}

ShuffleElement symmetrize(QuiverPtr q, const RatFun& f, const DimVector& hdeg, Side side) {
  return symmetrize(std::move(q), f.num(), {f.den()}, hdeg, side);
}

ShuffleElement shuffle_product_generic(const ShuffleElement& F0, const ShuffleElement& G0) {
  if (F0.side() != G0.side()) throw std::invalid_argument("shuffle product across sides");
  if (F0.quiver() != G0.quiver()) throw std::invalid_argument("shuffle product across quivers");
  const bool neg = F0.side() == Side::Negative;
  const ShuffleElement& F = neg ? G0 : F0;
  const ShuffleElement& G = neg ? F0 : G0;
  const Quiver& q = F.quiver();
  DimVector nF = F.hdeg(), nG = G.hdeg(), n = nF + nG;
  auto ren = offset_renaming(q, nF, nG);
  std::vector<Colored> zf, zg;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (int a = 0; a < nF[i]; ++a) zf.emplace_back(i, z_symbol(q, i, a));
    for (int b = 0; b < nG[i]; ++b) zg.emplace_back(i, z_symbol(q, i, nF[i] + b));
  }
  LaurentPoly num = F.num() * G.num().rename(ren);
  std::vector<LaurentPoly> den{F.den() * G.den()};
  for (const auto& [ci, za] : zf)
    for (const auto& [cj, zb] : zg) {
      BinomialRatio k = zeta_parts(q, ci, cj);
      Monomial x = Monomial::from_entries({{za, 1}, {zb, -1}});
      for (const Binomial& b : k.num) num *= b.at(x);
      for (const Binomial& b : k.den) den.push_back(b.at(x));
    }
  Rational scale = 1;
  for (std::size_t i = 0; i < q.size(); ++i) scale *= factorial(nF[i]) * factorial(nG[i]);
  return symmetrize(F.quiver_ptr(), num * (Rational(1) / scale), den, n, F0.side());
}

ShuffleElement shuffle_product(const ShuffleElement& F0, const ShuffleElement& G0) {
  if (F0.side() != G0.side()) throw std::invalid_argument("shuffle product across sides");
  if (F0.quiver_ptr() != G0.quiver_ptr() && F0.quiver() != G0.quiver())
    throw std::invalid_argument("shuffle product across quivers");
  const bool neg = F0.side() == Side::Negative;
  const ShuffleElement& F = neg ? G0 : F0;
  const ShuffleElement& G = neg ? F0 : G0;
  const Quiver& q = F.quiver();
  const Symbol qs = q_symbol();
  DimVector nF = F.hdeg(), nG = G.hdeg(), n = nF + nG;
  if (F.is_zero() || G.is_zero())
    return ShuffleElement(F.quiver_ptr(), n, LaurentPoly(), LaurentPoly(1), F0.side());
  VarTable vt(q, n);

  // P = F G prod_{within}(z_a - z_b) prod_{cross} numerator factors; the
  // product F G zeta equals P / Vandermonde.
  LaurentPoly P(1);
  auto zv = [&](Symbol s) { return LaurentPoly::var(s); };
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto& z = vt.color(i);
    for (int a = 0; a < nF[i]; ++a)
      for (int b = a + 1; b < nF[i]; ++b) P *= zv(z[a]) - zv(z[b]);
    for (int a = nF[i]; a < n[i]; ++a)
      for (int b = a + 1; b < n[i]; ++b) P *= zv(z[a]) - zv(z[b]);
  }
  for (std::size_t i = 0; i < q.size(); ++i)
    for (int a = 0; a < nF[i]; ++a) {
      Symbol za = vt.at(i, a);
      for (std::size_t j = 0; j < q.size(); ++j)
        for (int b = nF[j]; b < n[j]; ++b) {
          Symbol zb = vt.at(j, b);
          if (i == j) P *= LaurentPoly(Monomial::from_entries({{za, 1}, {qs, -1}})) - zv(zb);
          for (Symbol t : q.params(i, j))
            P *= LaurentPoly(1) - LaurentPoly(Monomial::from_entries({{t, 1}, {za, 1}, {zb, -1}}));
          for (Symbol t : q.params(j, i))
            P *= LaurentPoly(1) -
                 LaurentPoly(Monomial::from_entries({{qs, 1}, {t, -1}, {zb, 1}, {za, -1}}));
        }
    }
  P *= F.num();
  P *= G.num().rename(offset_renaming(q, nF, nG));

  // Sum of sgn(pi) pi(P) over shuffles: subsets of positions taken by F.
  LaurentPoly S;
  std::vector<std::vector<bool>> pick(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    pick[i].assign(n[i], false);
    std::fill(pick[i].begin(), pick[i].begin() + nF[i], true);
  }
  std::function<void(std::size_t, std::map<Symbol, Symbol>&, int)> rec =
      [&](std::size_t i, std::map<Symbol, Symbol>& ren, int sign) {
        if (i == q.size()) {
          LaurentPoly term = ren.empty() ? P : P.rename(ren);
          if (sign < 0) S -= term;
          else S += term;
          return;
        }
        // prev_permutation on a true-first mask walks every subset once.
        std::vector<bool> mask = pick[i];
        do {
          std::map<Symbol, Symbol> local = ren;
          int inv = 0, fi = 0, gi = nF[i];
          for (int pos = 0; pos < n[i]; ++pos) {
            int src = mask[pos] ? fi++ : gi++;
            if (mask[pos]) inv += pos - (fi - 1);
            if (src != pos) local[vt.at(i, src)] = vt.at(i, pos);
          }
          rec(i + 1, local, (inv % 2) ? -sign : sign);
        } while (std::prev_permutation(mask.begin(), mask.end()));
      };
  std::map<Symbol, Symbol> ren0;
  rec(0, ren0, 1);

  for (std::size_t i = 0; i < q.size(); ++i)
    for (int a = 0; a < n[i]; ++a)
      for (int b = a + 1; b < n[i]; ++b) S = divide_by_difference(S, vt.at(i, a), vt.at(i, b));
  return ShuffleElement(F.quiver_ptr(), n, S, F.den() * G.den(), F0.side());
}

ShuffleElement shift(const ShuffleElement& F, const DimVector& k) {
  check_compatible(F.quiver(), k);
  VarTable vt = F.vars();
  std::vector<Monomial::Entry> es;
  int sign = F.side() == Side::Positive ? 1 : -1;
  for (std::size_t i = 0; i < vt.colors(); ++i)
    for (Symbol s : vt.color(i))
      if (k[i] != 0) es.emplace_back(s, sign * k[i]);
  Monomial m = Monomial::from_entries(std::move(es));
  return ShuffleElement(F.quiver_ptr(), F.hdeg(), F.num().mul_monomial(m), F.den(), F.side());
}

bool quadratic_relation_check(QuiverPtr q, std::size_t i, std::size_t j, int a, int b,
                              int window) {
  Symbol z = intern("z"), w = intern("w");
  Monomial wz = Monomial::from_entries({{w, 1}, {z, -1}});
  // zeta_ji(w/z) and zeta_ij(z/w), both multiplied by (1 - w/z)^{delta_ij}.
  LaurentPoly L(1), R(1);
  for (const Binomial& f : zeta_parts(*q, j, i).num) L *= f.at(wz);
  for (const Binomial& f : zeta_parts(*q, i, j).num) R *= f.at(wz.inverse());
  if (i == j) R *= LaurentPoly(wz, -1);
  auto expand = [&](const LaurentPoly& K, int A, int B, bool swap) {
    ShuffleElement acc(q, DimVector::unit(q->size(), i) + DimVector::unit(q->size(), j),
                       LaurentPoly());
    for (const auto& [m, c] : K.terms()) {
      int alpha = m.exponent(z), beta = m.exponent(w);
      LaurentPoly coef(m.without(z).without(w), c);
      ShuffleElement ei = ShuffleElement::generator(q, i, A + alpha);
      ShuffleElement ej = ShuffleElement::generator(q, j, B + beta);
      acc = acc + (swap ? shuffle_product(ej, ei) : shuffle_product(ei, ej)) * RatFun(coef);
    }
    return acc;
  };
  for (int A = a - window; A <= a + window; ++A)
    for (int B = b - window; B <= b + window; ++B)
      if (expand(L, A, B, false) != expand(R, A, B, true)) return false;
  return true;
}

}  // namespace kha
