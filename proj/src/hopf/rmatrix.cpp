#include <stdexcept>

#include "internal.hpp"

namespace kha {

namespace {

bool integral(const Slope& m, const DimVector& n) { return dot(m, n).get_den() == 1; }

std::vector<CartanFactor> cartan_of(const DimVector& n, bool minus) {
  std::vector<CartanFactor> out;
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] != 0) out.push_back({i, 0, minus, n[i]});
  return out;
}

ShuffleElement zero_like(const ShuffleElement& F) { return F * RatFun(0); }

}  // namespace

TensorElement rmatrix(const std::vector<PairingTable>& tables) {
  QuiverPtr q;
  for (const PairingTable& t : tables)
    if (!t.positive.empty()) q = t.positive.front().quiver_ptr();
  if (!q) throw std::invalid_argument("rmatrix needs a nonempty table");
  TensorElement r(q, {Side::Positive, Side::Negative});
  for (const PairingTable& t : tables)
    for (std::size_t a = 0; a < t.positive.size(); ++a)
      r = r + TensorElement::pure({t.positive[a], t.dual[a]});
  return r;
}

TensorElement rmatrix(QuiverPtr q, const Slope& m, const DimVector& cutoff, const WheelOptions& opt) {
  check_compatible(*q, cutoff);
  std::vector<PairingTable> tables;
  for (const DimVector& n : boxed_below(cutoff))
    if (integral(m, n)) tables.push_back(gram_and_dual(q, m, n, opt));
  return rmatrix(tables);
}

std::string rmatrix_cartan_prefactor(const Quiver& q) {
  std::string s = "q^(";
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) s += " + ";
    s += "H_" + q.nodes()[i] + " (x) H_" + q.nodes()[i];
  }
  return s + ")";
}

bool primitive_check(const ShuffleElement& F, const Slope& m) {
  TensorElement d = coproduct_slope(F, m);
  const bool positive = F.side() == Side::Positive;
  ShuffleElement one = ShuffleElement::constant(F.quiver_ptr(), RatFun(1), F.side());
  TensorElement expect =
      positive ? TensorElement::pure({F, one}) + TensorElement::pure({one, F}, {cartan_of(F.hdeg(), false), {}})
               : TensorElement::pure({one, F}) + TensorElement::pure({F, one}, {{}, cartan_of(F.hdeg(), true)});
  return d == expect;
}

namespace {

// Kernel of the linear map basis -> coordinates of v(basis element).
std::vector<std::vector<RatFun>> linear_kernel(const std::vector<detail::TensorCoords>& images) {
  std::map<std::pair<TensorElement::Key, std::string>, std::size_t> rows;
  for (const auto& im : images)
    for (const auto& [k, c] : im) rows.emplace(k, 0);
  std::size_t r = 0;
  for (auto& [k, idx] : rows) idx = r++;
  Matrix A(rows.size(), images.size());
  for (std::size_t c = 0; c < images.size(); ++c)
    for (const auto& [k, v] : images[c]) A(rows[k], c) = v;
  return A.kernel();
}

std::size_t span_rank(const std::vector<ShuffleElement>& elems) {
  std::map<Monomial, std::size_t, std::function<bool(const Monomial&, const Monomial&)>> rows(
      [](const Monomial& a, const Monomial& b) { return compare(a, b) < 0; });
  std::vector<std::vector<std::pair<Monomial, RatFun>>> cols;
  for (const auto& e : elems) {
    cols.push_back(e.terms());
    for (const auto& [m, c] : cols.back()) rows.emplace(m, 0);
  }
  std::size_t r = 0;
  for (auto& [m, idx] : rows) idx = r++;
  Matrix A(rows.size(), elems.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [m, v] : cols[c]) A(rows[m], c) = v;
  return A.rank();
}

}  // namespace

std::vector<ShuffleElement> primitives(QuiverPtr q, const Slope& m, const DimVector& n, Side side,
                                       const WheelOptions& opt) {
  GradedPiece piece = slope_basis(q, m, n, side, opt);
  if (n.is_zero()) return {};
  ShuffleElement one = ShuffleElement::constant(q, RatFun(1), side);
  std::vector<detail::TensorCoords> images;
  for (const ShuffleElement& E : piece.basis) {
    TensorElement d = detail::slope_coproduct_raw(E, m);
    d = side == Side::Positive
            ? d - TensorElement::pure({E, one}) - TensorElement::pure({one, E}, {cartan_of(n, false), {}})
            : d - TensorElement::pure({one, E}) - TensorElement::pure({E, one}, {{}, cartan_of(n, true)});
    images.push_back(detail::coordinates(d));
  }
  std::vector<ShuffleElement> out;
  for (const auto& v : linear_kernel(images)) {
    ShuffleElement p = zero_like(piece.basis.front());
    for (std::size_t a = 0; a < v.size(); ++a)
      if (!v[a].is_zero()) p = p + piece.basis[a] * v[a];
    out.push_back(p);
  }
  return out;
}

bool primitives_generate(QuiverPtr q, const Slope& m, const DimVector& cutoff, const WheelOptions& opt) {
  check_compatible(*q, cutoff);
  std::map<DimVector, std::vector<ShuffleElement>> prims, gens;
  for (const DimVector& n : boxed_below(cutoff)) {
    if (n.is_zero() || !integral(m, n)) continue;
    prims[n] = primitives(q, m, n, Side::Positive, opt);
    std::vector<ShuffleElement> g = prims[n];
    for (const DimVector& n1 : boxed_below(n)) {
      if (n1.is_zero() || n1 == n || !integral(m, n1)) continue;
      for (const auto& p : prims[n1])
        for (const auto& h : gens[n - n1]) g.push_back(shuffle_product(p, h));
    }
    std::size_t dim = slope_basis(q, m, n, Side::Positive, opt).basis.size();
    if (span_rank(g) != dim) return false;
    gens[n] = std::move(g);
  }
  return true;
}

bool coassoc_check(const ShuffleElement& F, const Slope& m) {
  TensorElement d = coproduct_slope(F, m);
  auto delta = [&](const ShuffleElement& E) { return detail::slope_coproduct_raw(E, m); };
  return d.apply_to_leg(0, delta) == d.apply_to_leg(1, delta);
}

RatFun cartan_twist(const Quiver& q, const DimVector& first, const DimVector& second) {
  RatFun acc(1);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      int e = first[i] * second[j];
      if (e != 0) acc *= cartan_pairing(q, i, j, 0)[0].pow(e);
    }
  return acc;
}

QuasiTriangularReport quasi_triangularity_check(QuiverPtr q, const Slope& m, const DimVector& cutoff,
                                                const WheelOptions& opt) {
  check_compatible(*q, cutoff);
  std::map<DimVector, PairingTable> tables;
  for (const DimVector& n : boxed_below(cutoff))
    if (integral(m, n)) tables.emplace(n, gram_and_dual(q, m, n, opt));
  auto delta = [&](const ShuffleElement& E) { return detail::slope_coproduct_raw(E, m); };
  QuasiTriangularReport rep{true, true};
  for (const auto& [n, t] : tables) {
    TensorElement R(q, {Side::Positive, Side::Negative});
    for (std::size_t a = 0; a < t.positive.size(); ++a) R = R + TensorElement::pure({t.positive[a], t.dual[a]});
    TensorElement left = R.apply_to_leg(0, delta);
    TensorElement right = R.apply_to_leg(1, delta);
    TensorElement left_rhs(q, {Side::Positive, Side::Positive, Side::Negative});
    TensorElement right_rhs(q, {Side::Positive, Side::Negative, Side::Negative});
    for (const auto& [na, ta] : tables) {
      if (!na.leq(n)) continue;
      DimVector nb = n - na;
      auto it = tables.find(nb);
      if (it == tables.end()) continue;
      const PairingTable& tb = it->second;
      RatFun kappa = cartan_twist(*q, nb, na).inverse();
      for (std::size_t a = 0; a < ta.positive.size(); ++a)
        for (std::size_t b = 0; b < tb.positive.size(); ++b) {
          left_rhs = left_rhs + TensorElement::pure({ta.positive[a], tb.positive[b],
                                                     shuffle_product(ta.dual[a], tb.dual[b])},
                                                    {cartan_of(nb, false), {}, {}}) *
                                    kappa;
          right_rhs = right_rhs + TensorElement::pure({shuffle_product(ta.positive[a], tb.positive[b]),
                                                       tb.dual[b], ta.dual[a]},
                                                      {{}, {}, cartan_of(nb, true)});
        }
    }
    rep.left = rep.left && left == left_rhs;
    rep.right = rep.right && right == right_rhs;
  }
  return rep;
}

bool bialgebra_check(const ShuffleElement& F, const ShuffleElement& G, const ShuffleElement& H,
                     int order) {
  if (F.side() != Side::Positive || G.side() != Side::Positive || H.side() != Side::Negative)
    throw std::invalid_argument("bialgebra_check expects F, G positive and H negative");
  const Quiver& q = H.quiver();
  if (F.hdeg() + G.hdeg() != H.hdeg()) return true;
  const DimVector& k = G.hdeg();
  const DimVector r = F.hdeg();
  if (!H.is_zero() && !F.is_zero() && !G.is_zero()) {
    VarTable vt = H.vars();
    long minleft = 0;
    bool first = true;
    for (const auto& [mono, c] : H.num().terms()) {
      long d = 0;
      for (std::size_t i = 0; i < q.size(); ++i)
        for (int a = 0; a < k[i]; ++a) d += mono.exponent(vt.at(i, a));
      minleft = first ? d : std::min(minleft, d);
      first = false;
    }
    minleft += inner(q, r, k);
    long needed = -static_cast<long>(G.vdeg()) - minleft;
    if (order < needed)
      throw std::invalid_argument("order " + std::to_string(order) + " too small; need " +
                                  std::to_string(needed));
  }
  RatFun lhs = pair(shuffle_product(F, G), H);
  TensorElement D = cartan_counit(coproduct_full(H, order));
  RatFun rhs(0);
  auto it = D.parts().find({k, r});
  if (it != D.parts().end() && !F.is_zero() && !G.is_zero()) {
    auto left = detail::leg_vars(q, k, 0);
    auto right = detail::leg_vars(q, r, 1);
    auto gw = word_expansion(G);
    auto fw = word_expansion(F);
    for (const auto& [v, dv] : fw) {
      RatFun inner_v = detail::word_integral(q, v, it->second.num, right, false);
      if (inner_v.is_zero()) continue;
      for (const auto& [w, cw] : gw) {
        RatFun val = detail::word_integral(q, w, inner_v.num(), left, false);
        rhs += cw * dv * val / RatFun(inner_v.den());
      }
    }
    rhs /= RatFun(it->second.den);
  }
  return lhs == rhs;
}

}  // namespace kha
