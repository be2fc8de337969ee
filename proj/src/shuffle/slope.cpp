#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "kha/linalg.hpp"
#include "kha/series.hpp"
#include "kha/shuffle.hpp"

namespace kha {

// ------------------------------------------------------------------ wheels

std::vector<Specialization> wheel_specializations(const Quiver& q, const DimVector& n,
                                                  const WheelOptions& opt) {
  VarTable vt(q, n);
  const Symbol qs = q_symbol();
  std::vector<Specialization> out;
  auto mono = [](std::vector<Monomial::Entry> es) { return Monomial::from_entries(std::move(es)); };
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      for (Symbol t : q.params(i, j)) {
        const auto &zi = vt.color(i), &zj = vt.color(j);
        // z_ja = t z_ib = q z_jc
        if (opt.chained) {
          bool ok = i == j ? zi.size() >= 3 : (zj.size() >= 2 && zi.size() >= 1);
          if (ok) {
            Symbol za = zj[0], zc = zj[1], zb = i == j ? zi[2] : zi[0];
            out.push_back({{za, {1, mono({{t, 1}, {zb, 1}})}},
                           {zc, {1, mono({{t, 1}, {qs, -1}, {zb, 1}})}}});
          }
        }
        if (opt.companion == Companion::TwoVariable) {
          // z_ia = q z_jb / t
          bool ok = i == j ? zi.size() >= 2 : (zi.size() >= 1 && zj.size() >= 1);
          if (ok) {
            Symbol za = zi[0], zb = i == j ? zi[1] : zj[0];
            out.push_back({{za, {1, mono({{qs, 1}, {t, -1}, {zb, 1}})}}});
          }
        } else if (opt.companion == Companion::Chained) {
          // z_ia = q z_jb / t = q z_ic
          bool ok = i == j ? zi.size() >= 3 : (zi.size() >= 2 && zj.size() >= 1);
          if (ok) {
            Symbol za = zi[0], zc = zi[1], zb = i == j ? zi[2] : zj[0];
            out.push_back({{za, {1, mono({{qs, 1}, {zc, 1}})}},
                           {zb, {1, mono({{t, 1}, {zc, 1}})}}});
          }
        }
      }
  return out;
}

bool wheel_check(const ShuffleElement& F, const WheelOptions& opt) {
  for (const auto& spec : wheel_specializations(F.quiver(), F.hdeg(), opt))
    if (!F.num().substitute_monomials(spec).is_zero()) return false;
  return true;
}

// ------------------------------------------------------------------ slopes

long scaled_degree(const ShuffleElement& F, const DimVector& k, bool maximum) {
  if (F.is_zero()) return maximum ? kNegInfinity : kPosInfinity;
  VarTable vt = F.vars();
  std::vector<Symbol> scaled;
  for (std::size_t i = 0; i < vt.colors(); ++i)
    for (int a = 0; a < k[i]; ++a) scaled.push_back(vt.at(i, a));
  long best = maximum ? kNegInfinity : kPosInfinity;
  for (const auto& [m, c] : F.num().terms()) {
    long d = 0;
    for (Symbol s : scaled) d += m.exponent(s);
    best = maximum ? std::max(best, d) : std::min(best, d);
  }
  return best;
}

bool slope_leq(const ShuffleElement& F, const Slope& m) {
  if (F.is_zero()) return true;
  const Quiver& q = F.quiver();
  const DimVector& n = F.hdeg();
  for (const DimVector& k : boxed_below(n)) {
    Rational bound = dot(m, k) + inner(q, k, n - k);
    if (Rational(scaled_degree(F, k, true)) > bound) return false;
  }
  return true;
}

bool slope_geq(const ShuffleElement& F, const Slope& m) {
  if (F.is_zero()) return true;
  const Quiver& q = F.quiver();
  const DimVector& n = F.hdeg();
  for (const DimVector& k : boxed_below(n)) {
    Rational bound = -dot(m, k) - inner(q, n - k, k);
    if (Rational(scaled_degree(F, k, false)) < bound) return false;
  }
  return true;
}

bool slope_test(const ShuffleElement& F, const Slope& m) {
  return F.side() == Side::Positive ? slope_leq(F, m) : slope_geq(F, m);
}

bool naive_slope_eq(const ShuffleElement& F, const Slope& m) {
  if (F.is_zero()) return true;
  Rational target = dot(m, F.hdeg());
  if (F.side() == Side::Negative) target = -target;
  return Rational(F.vdeg()) == target;
}

// ------------------------------------------------------------ slope bases

ShuffleElement orbit_sum(QuiverPtr q, const DimVector& n, const Orbit& orbit, Side side) {
  VarTable vt(*q, n);
  std::vector<LaurentPoly::Term> terms;
  std::function<void(std::size_t, std::vector<Monomial::Entry>&)> rec =
      [&](std::size_t i, std::vector<Monomial::Entry>& es) {
        if (i == vt.colors()) {
          terms.emplace_back(Monomial::from_entries(es), Rational(1));
          return;
        }
        std::vector<int> e = orbit[i];
        std::sort(e.begin(), e.end());
        do {
          std::size_t mark = es.size();
          for (std::size_t a = 0; a < e.size(); ++a)
            if (e[a] != 0) es.emplace_back(vt.at(i, a), e[a]);
          rec(i + 1, es);
          es.resize(mark);
        } while (std::next_permutation(e.begin(), e.end()));
      };
  std::vector<Monomial::Entry> es;
  rec(0, es);
  return ShuffleElement(std::move(q), n, LaurentPoly::from_terms(std::move(terms)), LaurentPoly(1),
                        side);
}

namespace {

long floor_of(const Rational& r) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return f.get_si();
}

long ceil_of(const Rational& r) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return c.get_si();
}

// Nonincreasing sequences of length len in [lo, hi].
void sequences(int len, long lo, long hi, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  long top = cur.empty() ? hi : std::min<long>(hi, cur.back());
  for (long e = top; e >= lo; --e) {
    cur.push_back(static_cast<int>(e));
    sequences(len, lo, hi, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Orbit> slope_orbits(const Quiver& q, const Slope& m, const DimVector& n, Side side) {
  Rational target = dot(m, n);
  if (target.get_den() != 1)
    throw std::invalid_argument("m.n = " + to_string(target) + " is not an integer");
  const int sign = side == Side::Positive ? 1 : -1;
  target *= sign;
  std::vector<std::vector<std::vector<int>>> per_color(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (n[i] == 0) {
      per_color[i] = {{}};
      continue;
    }
    DimVector e = DimVector::unit(q.size(), i), rest = n - e;
    // k = e_i bounds one exponent; k = n - e_i bounds it from the other side.
    Rational lo = sign * m[i] - inner(q, rest, e);
    Rational hi = sign * m[i] + inner(q, e, rest);
    std::vector<int> cur;
    sequences(n[i], ceil_of(lo), floor_of(hi), cur, per_color[i]);
  }
  std::vector<Orbit> out;
  Orbit cur;
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long sum) {
    if (i == q.size()) {
      if (Rational(sum) == target) out.push_back(cur);
      return;
    }
    for (const auto& s : per_color[i]) {
      long add = 0;
      for (int x : s) add += x;
      cur.push_back(s);
      rec(i + 1, sum + add);
      cur.pop_back();
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(), std::greater<>());
  auto qp = std::make_shared<const Quiver>(q);
  std::vector<Orbit> kept;
  for (const Orbit& o : out)
    if (slope_test(orbit_sum(qp, n, o, side), m)) kept.push_back(o);
  return kept;
}

GradedPiece slope_basis(QuiverPtr q, const Slope& m, const DimVector& n, Side side,
                        const WheelOptions& opt, const std::vector<std::size_t>& permutation) {
  check_compatible(*q, n);
  if (m.size() != q->size()) throw std::invalid_argument("slope does not match quiver");
  GradedPiece piece;
  piece.hdeg = n;
  Rational v = dot(m, n);
  if (v.get_den() != 1) throw std::invalid_argument("m.n = " + to_string(v) + " is not an integer");
  piece.vdeg = static_cast<int>((side == Side::Positive ? v : Rational(-v)).get_num().get_si());
  if (n.is_zero()) {
    piece.basis.push_back(ShuffleElement::constant(q, RatFun(1), side));
    return piece;
  }
  std::vector<Orbit> orbits = slope_orbits(*q, m, n, side);
  const std::size_t N = orbits.size();
  std::vector<std::size_t> order(N);
  for (std::size_t c = 0; c < N; ++c) order[c] = c;
  if (!permutation.empty()) {
    if (permutation.size() != N) throw std::invalid_argument("orbit permutation has wrong size");
    order = permutation;
  }
  std::vector<ShuffleElement> elems;
  for (std::size_t c = 0; c < N; ++c) elems.push_back(orbit_sum(q, n, orbits[order[c]], side));

  // Wheel equations: one row per (specialisation, surviving z monomial).
  VarTable vt(*q, n);
  std::vector<std::vector<std::pair<std::size_t, LaurentPoly>>> rows;
  for (const auto& spec : wheel_specializations(*q, n, opt)) {
    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
    std::vector<std::unordered_map<std::size_t, std::vector<LaurentPoly::Term>>> local;
    for (std::size_t c = 0; c < N; ++c) {
      LaurentPoly s = elems[c].num().substitute_monomials(spec);
      for (const auto& [mono, coef] : s.terms()) {
        auto [z, rest] = vt.split(mono);
        auto it = index.find(z);
        if (it == index.end()) {
          it = index.emplace(z, local.size()).first;
          local.emplace_back();
        }
        local[it->second][c].emplace_back(rest, coef);
      }
    }
    for (auto& row : local) {
      std::vector<std::pair<std::size_t, LaurentPoly>> r;
      for (auto& [c, ts] : row) {
        LaurentPoly p = LaurentPoly::from_terms(std::move(ts));
        if (!p.is_zero()) r.emplace_back(c, std::move(p));
      }
      if (!r.empty()) rows.push_back(std::move(r));
    }
  }
  Matrix A(rows.size(), N);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, p] : rows[r]) A(r, c) = RatFun(p);
  std::vector<std::vector<RatFun>> ker;
  if (rows.empty()) {
    for (std::size_t c = 0; c < N; ++c) {
      ker.emplace_back(N);
      ker.back()[c] = RatFun(1);
    }
  } else {
    ker = A.kernel();
  }

  // Canonical reduced echelon form over the sorted orbit order.
  Matrix K(ker.size(), N);
  for (std::size_t r = 0; r < ker.size(); ++r)
    for (std::size_t c = 0; c < N; ++c) K(r, order[c]) = ker[r][c];
  Matrix red = K.rref();
  for (std::size_t r = 0; r < red.rows(); ++r) {
    LaurentPoly lcm(1);
    for (std::size_t c = 0; c < N; ++c)
      if (!red(r, c).is_zero()) lcm = lcm * *divide_exact(red(r, c).den(), gcd(lcm, red(r, c).den()));
    LaurentPoly num;
    for (std::size_t c = 0; c < N; ++c) {
      if (red(r, c).is_zero()) continue;
      LaurentPoly scale = red(r, c).num() * *divide_exact(lcm, red(r, c).den());
      num += orbit_sum(q, n, orbits[c], side).num() * scale;
    }
    if (!num.is_zero()) piece.basis.emplace_back(q, n, num, lcm, side);
  }
  return piece;
}

}  // namespace kha
