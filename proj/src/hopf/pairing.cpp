#include <algorithm>
#include <stdexcept>

#include "internal.hpp"
#include "kha/series.hpp"

namespace kha {

ShuffleElement word_element(QuiverPtr q, const Word& w, Side side) {
  ShuffleElement acc = ShuffleElement::constant(q, RatFun(1), side);
  for (const auto& [i, d] : w) acc = shuffle_product(acc, ShuffleElement::generator(q, i, d, side));
  return acc;
}

namespace detail {

RatFun word_integral(const Quiver& q, const Word& w, const LaurentPoly& num,
                     const std::vector<std::vector<Symbol>>& vars, bool fword) {
  std::vector<std::size_t> next(q.size(), 0);
  std::vector<Symbol> z;
  Monomial zd;
  RatFun norm(1);
  for (const auto& [i, d] : w) {
    if (next[i] >= vars[i].size()) throw std::invalid_argument("word does not match hdeg");
    z.push_back(vars[i][next[i]++]);
    zd = zd * Monomial::var(z.back(), d);
    norm *= gamma(q, i);
  }
  for (std::size_t i = 0; i < q.size(); ++i)
    if (next[i] != vars[i].size()) throw std::invalid_argument("word does not match hdeg");
  FactoredRat f(num.mul_monomial(zd));
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = a + 1; b < w.size(); ++b) {
      BinomialRatio k = fword ? zeta_parts(q, w[a].first, w[b].first)
                              : zeta_parts(q, w[b].first, w[a].first);
      Monomial x = fword ? Monomial::var(z[a]) * Monomial::var(z[b], -1)
                         : Monomial::var(z[b]) * Monomial::var(z[a], -1);
      for (const Binomial& bin : k.den) f.multiply(bin.at(x));
      for (const Binomial& bin : k.num) f.divide_by(bin.at(x));
    }
  FactoredRat ct = constant_term_iterated(std::move(f), z, fword ? Region::Increasing : Region::Decreasing);
  return ct.to_ratfun() * norm;
}

}  // namespace detail

namespace {

std::vector<std::vector<Symbol>> element_vars(const ShuffleElement& F) {
  VarTable vt = F.vars();
  std::vector<std::vector<Symbol>> out;
  for (std::size_t i = 0; i < vt.colors(); ++i) out.push_back(vt.color(i));
  return out;
}

DimVector word_hdeg(const Quiver& q, const Word& w) {
  DimVector n(q.size());
  for (const auto& [i, d] : w) ++n[i];
  return n;
}

}  // namespace

RatFun pair_with_fword(const ShuffleElement& F, const Word& w) {
  if (F.side() != Side::Positive) throw std::invalid_argument("left argument must be positive");
  if (word_hdeg(F.quiver(), w) != F.hdeg()) return RatFun(0);
  if (F.is_zero()) return RatFun(0);
  RatFun v = detail::word_integral(F.quiver(), w, F.num(), element_vars(F), true);
  return v / RatFun(F.den());
}

RatFun pair_with_eword(const Word& w, const ShuffleElement& G) {
  if (G.side() != Side::Negative) throw std::invalid_argument("right argument must be negative");
  if (word_hdeg(G.quiver(), w) != G.hdeg()) return RatFun(0);
  if (G.is_zero()) return RatFun(0);
  RatFun v = detail::word_integral(G.quiver(), w, G.num(), element_vars(G), false);
  return v / RatFun(G.den());
}

namespace {

bool canonical(const Monomial& m, const VarTable& vt) {
  for (std::size_t i = 0; i < vt.colors(); ++i)
    for (std::size_t a = 0; a + 1 < vt.color(i).size(); ++a)
      if (m.exponent(vt.at(i, a)) < m.exponent(vt.at(i, a + 1))) return false;
  return true;
}

std::map<std::string, RatFun> symmetric_coords(const ShuffleElement& F) {
  VarTable vt = F.vars();
  std::map<std::string, RatFun> out;
  for (const auto& [m, c] : F.terms())
    if (canonical(m, vt)) out[m.to_string()] = c;
  return out;
}

// Colour sequences with the multiplicities of n, in lexicographic order.
std::vector<std::vector<std::size_t>> colour_sequences(const DimVector& n) {
  std::vector<std::size_t> seq;
  for (std::size_t i = 0; i < n.size(); ++i) seq.insert(seq.end(), n[i], i);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(seq);
  while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

void degree_tuples(int len, int lo, int hi, int sum, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == len) {
    if (sum == 0) out.push_back(cur);
    return;
  }
  int left = len - static_cast<int>(cur.size()) - 1;
  for (int d = lo; d <= hi; ++d) {
    int rest = sum - d;
    if (rest < left * lo || rest > left * hi) continue;
    cur.push_back(d);
    degree_tuples(len, lo, hi, rest, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::pair<Word, RatFun>> word_expansion(const ShuffleElement& F, int widen) {
  if (F.is_zero()) return {};
  const DimVector& n = F.hdeg();
  if (n.is_zero()) return {{Word{}, RatFun::normalize(F.num(), F.den())}};
  if (!F.is_homogeneous()) throw std::invalid_argument("word expansion needs a homogeneous element");
  const int vdeg = F.vdeg();
  int lo = 0, hi = 0;
  bool first = true;
  for (Symbol s : F.num().variables()) {
    if (!F.vars().is_z(s)) continue;
    lo = first ? F.num().min_exp(s) : std::min(lo, F.num().min_exp(s));
    hi = first ? F.num().max_exp(s) : std::max(hi, F.num().max_exp(s));
    first = false;
  }
  // variables absent from every term have exponent 0
  lo = std::min(lo, 0);
  hi = std::max(hi, 0);
  auto target = symmetric_coords(F);
  for (int w = 0; w <= widen; ++w) {
    std::vector<Word> words;
    for (const auto& colours : colour_sequences(n)) {
      std::vector<std::vector<int>> tuples;
      std::vector<int> cur;
      degree_tuples(static_cast<int>(colours.size()), lo - w, hi + w, vdeg, cur, tuples);
      for (const auto& t : tuples) {
        Word word;
        for (std::size_t a = 0; a < t.size(); ++a) word.emplace_back(colours[a], t[a]);
        words.push_back(std::move(word));
      }
    }
    std::vector<std::map<std::string, RatFun>> cols;
    std::map<std::string, std::size_t> rows;
    for (const auto& [m, c] : target) rows.emplace(m, 0);
    for (const Word& word : words) {
      cols.push_back(symmetric_coords(word_element(F.quiver_ptr(), word, F.side())));
      for (const auto& [m, c] : cols.back()) rows.emplace(m, 0);
    }
    std::size_t r = 0;
    for (auto& [m, idx] : rows) idx = r++;
    Matrix A(rows.size(), words.size() + 1);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& [m, v] : cols[c]) A(rows[m], c) = v;
    for (const auto& [m, v] : target) A(rows[m], words.size()) = v;
    std::vector<std::size_t> pivots;
    Matrix E = A.rref(&pivots);
    if (!pivots.empty() && pivots.back() == words.size()) continue;
    std::vector<std::pair<Word, RatFun>> out;
    for (std::size_t p = 0; p < pivots.size(); ++p)
      if (!E(p, words.size()).is_zero()) out.emplace_back(words[pivots[p]], E(p, words.size()));
    return out;
  }
  throw std::runtime_error("word expansion: no spanning set of words found");
}

namespace {

void check_pair_sides(const ShuffleElement& F, const ShuffleElement& G) {
  if (F.side() != Side::Positive || G.side() != Side::Negative)
    throw std::invalid_argument("pair expects a positive and a negative element");
  if (F.quiver() != G.quiver()) throw std::invalid_argument("pairing across different quivers");
}

}  // namespace

RatFun pair(const ShuffleElement& F, const ShuffleElement& G) {
  check_pair_sides(F, G);
  if (F.hdeg() != G.hdeg() || F.is_zero() || G.is_zero()) return RatFun(0);
  RatFun acc(0);
  for (const auto& [w, c] : word_expansion(G)) acc += c * pair_with_fword(F, w);
  return acc;
}

RatFun pair_by_ewords(const ShuffleElement& F, const ShuffleElement& G) {
  check_pair_sides(F, G);
  if (F.hdeg() != G.hdeg() || F.is_zero() || G.is_zero()) return RatFun(0);
  RatFun acc(0);
  for (const auto& [w, c] : word_expansion(F)) acc += c * pair_with_eword(w, G);
  return acc;
}

std::vector<RatFun> cartan_pairing(const Quiver& q, std::size_t i, std::size_t j, int order) {
  if (order < 0) throw std::invalid_argument("negative order");
  Symbol x = intern("__x");
  Monomial mx = Monomial::var(x);
  RatFun f = zeta_parts(q, i, j).evaluate(mx.inverse()) / zeta_parts(q, j, i).evaluate(mx);
  LaurentSeries s = series_expand(f, x, Point::Zero, order + 1);
  std::vector<RatFun> out(order + 1, RatFun(0));
  for (std::size_t k = 0; k < s.coefficients.size(); ++k) {
    int e = s.exponent(k);
    if (e < 0) throw std::logic_error("Cartan pairing has a pole");
    if (e <= order) out[e] = s.coefficients[k];
  }
  return out;
}

PairingTable gram_and_dual(const std::vector<ShuffleElement>& positive,
                           const std::vector<ShuffleElement>& negative, const Slope& m) {
  if (positive.size() != negative.size())
    throw std::invalid_argument("bases of different sizes");
  PairingTable t;
  t.slope = m;
  if (!positive.empty()) t.hdeg = positive.front().hdeg();
  t.positive = positive;
  t.negative = negative;
  const std::size_t N = positive.size();
  t.gram = Matrix(N, N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) t.gram(a, b) = pair(positive[a], negative[b]);
  Matrix X;
  try {
    X = t.gram.inverse();
  } catch (const std::domain_error&) {
    throw std::runtime_error("singular Gram matrix in hdeg " + t.hdeg.to_string());
  }
  for (std::size_t a = 0; a < N; ++a) {
    ShuffleElement d = negative[0] * RatFun(0);
    for (std::size_t b = 0; b < N; ++b)
      if (!X(b, a).is_zero()) d = d + negative[b] * X(b, a);
    t.dual.push_back(d);
  }
  return t;
}

PairingTable gram_and_dual(QuiverPtr q, const Slope& m, const DimVector& n, const WheelOptions& opt) {
  GradedPiece pos = slope_basis(q, m, n, Side::Positive, opt);
  GradedPiece neg = slope_basis(q, m, n, Side::Negative, opt);
  PairingTable t = gram_and_dual(pos.basis, neg.basis, m);
  t.hdeg = n;
  return t;
}

}  // namespace kha
