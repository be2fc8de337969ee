#include <stdexcept>

#include "internal.hpp"

namespace kha {

namespace {

Symbol eps_symbol() {
  static const Symbol s = intern("__eps");
  return s;
}

LaurentPoly monomial_inverse(const LaurentPoly& m) {
  if (!m.is_monomial()) throw std::logic_error("expected a monomial");
  const auto& [mono, c] = m.leading();
  return LaurentPoly(mono.inverse(), Rational(1) / c);
}

// Expansion of kernel(x)^{-1} with x = u^s for a small monomial u, truncated
// at eps-degree `order`; every power of u carries the same power of eps.
LaurentPoly inverse_kernel_series(const BinomialRatio& k, const Monomial& u, int s, int order) {
  const Symbol eps = eps_symbol();
  LaurentPoly acc(1);
  auto factor = [&](const Binomial& b, bool invert) {
    int e = s * b.power;
    if (e == 0) throw std::logic_error("constant kernel factor");
    LaurentPoly lead(1), tail;
    if (e > 0) {
      tail = b.coef.mul_monomial(u.pow(e) * Monomial::var(eps, e));
    } else {
      lead = -b.coef.mul_monomial(u.pow(e));
      tail = monomial_inverse(b.coef).mul_monomial(u.pow(-e) * Monomial::var(eps, -e));
    }
    // the factor is lead * (1 - tail)
    if (!invert) {
      acc = (acc * (lead * (LaurentPoly(1) - tail))).truncate_above(eps, order);
      return;
    }
    LaurentPoly geo(1), pw(1);
    for (int d = std::abs(e); d <= order; d += std::abs(e)) {
      pw = (pw * tail).truncate_above(eps, order);
      geo += pw;
    }
    acc = (acc * monomial_inverse(lead) * geo).truncate_above(eps, order);
  };
  // 1/kernel: kernel denominators multiply, numerators invert
  for (const Binomial& b : k.den) factor(b, false);
  for (const Binomial& b : k.num) factor(b, true);
  return acc;
}

void check_side_hdeg(const ShuffleElement& F) {
  if (!F.hdeg().nonnegative()) throw std::invalid_argument("negative hdeg");
}

// F with its variables split: per colour the first k_i onto leg 0, the rest
// onto leg 1.
LaurentPoly split_onto_legs(const ShuffleElement& F, const DimVector& k) {
  const Quiver& q = F.quiver();
  VarTable vt(q, F.hdeg());
  std::map<Symbol, Symbol> ren;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (int a = 0; a < F.hdeg()[i]; ++a)
      ren[vt.at(i, a)] = a < k[i] ? leg_symbol(q, i, a, 0) : leg_symbol(q, i, a - k[i], 1);
  return F.num().rename(ren);
}

int leg_degree(const Monomial& m, std::size_t leg) {
  int d = 0;
  for (const auto& [s, e] : m.entries()) {
    auto info = detail::describe(s);
    if (info && !info->cartan && info->leg == leg) d += e;
  }
  return d;
}

Monomial cartan_power(const Quiver& q, const DimVector& n, bool minus, std::size_t leg) {
  std::vector<Monomial::Entry> es;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (n[i] != 0) es.emplace_back(cartan_symbol(q, i, 0, minus, leg), n[i]);
  return Monomial::from_entries(std::move(es));
}

std::optional<int> integer_dot(const Slope& m, const DimVector& n) {
  Rational v = dot(m, n);
  if (v.get_den() != 1) return std::nullopt;
  return static_cast<int>(v.get_num().get_si());
}

}  // namespace

TensorElement coproduct_full(const ShuffleElement& F, int order) {
  if (order < 0) throw std::invalid_argument("coproduct order must be >= 0");
  check_side_hdeg(F);
  const Quiver& q = F.quiver();
  const bool positive = F.side() == Side::Positive;
  const Symbol eps = eps_symbol();
  TensorElement out(F.quiver_ptr(), {F.side(), F.side()}, order);
  for (const DimVector& k : boxed_below(F.hdeg())) {
    DimVector r = F.hdeg() - k;
    auto left = detail::leg_vars(q, k, 0);
    auto right = detail::leg_vars(q, r, 1);
    LaurentPoly kernel(1);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (Symbol za : left[i])
        for (std::size_t j = 0; j < q.size(); ++j)
          for (Symbol zb : right[j]) {
            // u = z_a / z_b is small
            Monomial u = Monomial::var(za) * Monomial::var(zb, -1);
            LaurentPoly f = positive ? inverse_kernel_series(zeta_parts(q, j, i), u, -1, order)
                                     : inverse_kernel_series(zeta_parts(q, i, j), u, 1, order);
            kernel = (kernel * f).truncate_above(eps, order);
          }
    // Cartan currents: h+(z_b) on the left leg, or h-(z_a) on the right leg
    const auto& carriers = positive ? right : left;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (Symbol z : carriers[i]) {
        LaurentPoly h;
        for (int p = 0; p <= order; ++p) {
          Symbol c = cartan_symbol(q, i, p, !positive, positive ? 0 : 1);
          h += LaurentPoly(Monomial::var(c) * Monomial::var(z, positive ? -p : p) * Monomial::var(eps, p));
        }
        kernel = (kernel * h).truncate_above(eps, order);
      }
    LaurentPoly body = (split_onto_legs(F, k) * kernel).substitute(eps, LaurentPoly(1));
    out.add({k, r}, body, F.den());
  }
  return out;
}

namespace detail {

TensorElement slope_coproduct_raw(const ShuffleElement& F, const Slope& m) {
  check_side_hdeg(F);
  const Quiver& q = F.quiver();
  if (m.size() != q.size()) throw std::invalid_argument("slope does not match quiver");
  const bool positive = F.side() == Side::Positive;
  TensorElement out(F.quiver_ptr(), {F.side(), F.side()});
  for (const DimVector& k : boxed_below(F.hdeg())) {
    DimVector r = F.hdeg() - k;
    auto mk = integer_dot(m, positive ? r : k);
    if (!mk) continue;
    const int link = inner(q, r, k);
    auto left = leg_vars(q, k, 0);
    auto right = leg_vars(q, r, 1);
    // the leading monomial of the kernel product, divided out below
    LaurentPoly lead(1);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j)
        for (Symbol tp : q.params(j, i))
          for (Symbol za : left[i])
            for (Symbol zb : right[j]) {
              Monomial ratio = Monomial::var(zb) * Monomial::var(za, -1);
              if (positive)
                lead = lead.mul_monomial(Monomial::var(tp) * ratio) * Rational(-1);
              else
                lead = lead.mul_monomial(Monomial::var(q_symbol()) * Monomial::var(tp, -1) * ratio) *
                       Rational(-1);
            }
    if (positive) {
      int same = 0;
      for (std::size_t i = 0; i < q.size(); ++i) same += k[i] * r[i];
      lead = lead.mul_monomial(Monomial::var(q_symbol(), -same));
    }
    const int target = positive ? *mk + link : -*mk - link;
    const std::size_t leg = positive ? 1 : 0;
    LaurentPoly body = split_onto_legs(F, k).filter(
        [&](const Monomial& mono) { return leg_degree(mono, leg) == target; });
    if (body.is_zero()) continue;
    body = body * monomial_inverse(lead);
    Monomial h = positive ? cartan_power(q, r, false, 0) : cartan_power(q, k, true, 1);
    out.add({k, r}, body.mul_monomial(h), F.den());
  }
  return out;
}

}  // namespace detail

TensorElement coproduct_slope(const ShuffleElement& F, const Slope& m) {
  if (!slope_test(F, m))
    throw std::invalid_argument(F.side() == Side::Positive ? "slope_leq failed" : "slope_geq failed");
  if (!F.is_zero() && !naive_slope_eq(F, m)) throw std::invalid_argument("naive_slope_eq failed");
  return detail::slope_coproduct_raw(F, m);
}

TensorElement leading_part(const TensorElement& full, const Slope& m) {
  TensorElement r(full.quiver_ptr(), full.sides());
  TensorElement kept = full.filter([&](const TensorElement::Key& key, const Monomial& mono) {
    for (const auto& [s, e] : mono.entries()) {
      auto info = detail::describe(s);
      if (info && info->cartan && info->index != 0) return false;
    }
    for (std::size_t l = 0; l < key.size(); ++l) {
      auto v = integer_dot(m, key[l]);
      if (!v) return false;
      int want = full.sides()[l] == Side::Positive ? *v : -*v;
      if (leg_degree(mono, l) != want) return false;
    }
    return true;
  });
  for (const auto& [key, part] : kept.parts()) r.add(key, part.num, part.den);
  return r;
}

TensorElement cartan_counit(const TensorElement& T) {
  TensorElement r(T.quiver_ptr(), T.sides(), T.order());
  for (const auto& [key, part] : T.parts()) {
    std::vector<LaurentPoly::Term> terms;
    for (const auto& [mono, c] : part.num.terms()) {
      std::vector<Monomial::Entry> es;
      bool zero = false;
      for (const auto& [s, e] : mono.entries()) {
        auto info = detail::describe(s);
        if (info && info->cartan) {
          if (info->index != 0) zero = true;
          continue;
        }
        es.emplace_back(s, e);
      }
      if (!zero) terms.emplace_back(Monomial::from_entries(std::move(es)), c);
    }
    r.add(key, LaurentPoly::from_terms(std::move(terms)), part.den);
  }
  return r;
}

}  // namespace kha
