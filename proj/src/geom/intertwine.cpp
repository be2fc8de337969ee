#include <stdexcept>

#include "frac.hpp"

namespace kha {

Symbol sqrt_q_symbol() {
  static const Symbol s = intern("q12");
  return s;
}

int stab_prefactor_exponent(const Quiver& q, const DimVector& v1, const DimVector&,
                            const DimVector& v2, const DimVector& w2) {
  return dot(w2, v1) - inner(q, v2, v1);
}

namespace {

DimVector signed_dims(const Quiver& q, const FormalAlphabet& A) {
  DimVector n(q.size());
  for (const auto& e : A.entries()) n[e.root.first] += e.sign;
  return n;
}

DimVector dims(const Quiver& q, const std::vector<Colored>& roots) {
  DimVector n(q.size());
  for (const auto& c : roots) ++n[c.first];
  return n;
}

std::vector<Colored> concat(std::vector<Colored> a, const std::vector<Colored>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

FormalAlphabet with(const std::vector<Colored>& roots, const Colored& z, int sign) {
  FormalAlphabet A(roots);
  A.declare(z.second);
  if (sign > 0) A.plus(z);
  else A.minus(z);
  return A;
}

// X + z - z, written out as in the displays.
FormalAlphabet added_then_removed(const std::vector<Colored>& roots, const Colored& z) {
  FormalAlphabet A = with(roots, z, 1);
  A.minus(z);
  return A;
}

FormalAlphabet singleton(const Colored& z) {
  FormalAlphabet A;
  A.declare(z.second);
  A.plus(z);
  return A;
}

}  // namespace

namespace detail {

Frac stab_frac(const Quiver& q, const FormalAlphabet& X1, const std::vector<Colored>& W1,
               const FormalAlphabet& X2, const std::vector<Colored>& W2, bool prefactor) {
  Frac r = zeta_tilde_frac(q, X1, X2) * wedge_frac(X1, W2, Monomial::var(q_symbol())) *
           wedge_frac(X2, W1, Monomial());
  if (prefactor) {
    int e = stab_prefactor_exponent(q, signed_dims(q, X1), dims(q, W1), signed_dims(q, X2), dims(q, W2));
    r *= Frac(LaurentPoly(Monomial::var(sqrt_q_symbol(), e)));
  }
  return r;
}

}  // namespace detail

RatFun stab_infty_class(const Quiver& q, const FormalAlphabet& X1, const std::vector<Colored>& W1,
                        const FormalAlphabet& X2, const std::vector<Colored>& W2, bool prefactor) {
  return detail::stab_frac(q, X1, W1, X2, W2, prefactor).to_ratfun();
}

RatFun stab_infty_class(const Quiver& q, const Alphabet& first, const Alphabet& second, bool prefactor) {
  return stab_infty_class(q, FormalAlphabet(first.roots()), first.framing_roots(),
                          FormalAlphabet(second.roots()), second.framing_roots(), prefactor);
}

std::vector<std::pair<std::vector<Colored>, std::vector<Colored>>> splits(
    const std::vector<Colored>& roots, const DimVector& first) {
  std::vector<std::vector<Colored>> by_colour(first.size());
  for (const Colored& c : roots) {
    if (c.first >= first.size()) throw std::invalid_argument("root colour out of range");
    by_colour[c.first].push_back(c);
  }
  std::vector<std::pair<std::vector<Colored>, std::vector<Colored>>> out{{}};
  for (std::size_t i = 0; i < first.size(); ++i) {
    const auto& rs = by_colour[i];
    if (first[i] < 0 || first[i] > static_cast<int>(rs.size())) return {};
    std::vector<std::pair<std::vector<Colored>, std::vector<Colored>>> next;
    for (unsigned mask = 0; mask < (1u << rs.size()); ++mask) {
      if (__builtin_popcount(mask) != first[i]) continue;
      for (const auto& [a, b] : out) {
        auto a2 = a, b2 = b;
        for (std::size_t k = 0; k < rs.size(); ++k) (mask >> k & 1 ? a2 : b2).push_back(rs[k]);
        next.emplace_back(std::move(a2), std::move(b2));
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

using detail::Frac;

Frac stab_sum(const Quiver& q, const std::vector<Colored>& roots, const DimVector& v1,
              const std::vector<Colored>& W1, const std::vector<Colored>& W2, const KClass& p1,
              const KClass& p2, bool prefactor) {
  std::vector<std::pair<Frac, int>> terms;
  for (const auto& [a, b] : splits(roots, v1)) {
    FormalAlphabet A(a), B(b);
    terms.emplace_back(detail::stab_frac(q, A, W1, B, W2, prefactor) * detail::evaluate_frac(p1, A) *
                           detail::evaluate_frac(p2, B),
                       1);
  }
  return Frac::sum(terms);
}

Frac e_prefactor(const Quiver& q, std::size_t i, Symbol z, const std::vector<Colored>& X,
                 const std::vector<Colored>& W, NewRoot reading) {
  const Colored zc{i, z};
  FormalAlphabet Y = reading == NewRoot::Included ? with(X, zc, 1) : FormalAlphabet(X);
  return detail::zeta_tilde_frac(q, singleton(zc), Y) *
         detail::wedge_frac(singleton(zc), W, Monomial::var(q_symbol()));
}

Frac f_prefactor(const Quiver& q, std::size_t i, Symbol z, const std::vector<Colored>& X,
                 const std::vector<Colored>& W, FWedge wedge) {
  const Colored zc{i, z};
  Frac w = detail::wedge_frac(singleton(zc), W, Monomial());
  return detail::zeta_tilde_frac(q, FormalAlphabet(X), singleton(zc)).inverse() *
         (wedge == FWedge::Literal ? w : w.inverse());
}

Frac cartan_frac(const Quiver& q, std::size_t i, Symbol z, const std::vector<Colored>& X,
                 const std::vector<Colored>& W) {
  const Colored zc{i, z};
  FormalAlphabet Z = singleton(zc), A(X);
  return detail::zeta_tilde_frac(q, Z, A) * detail::zeta_tilde_frac(q, A, Z).inverse() *
         detail::wedge_frac(Z, W, Monomial::var(q_symbol())) * detail::wedge_frac(Z, W, Monomial()).inverse();
}

Frac act_e_frac(const Quiver& q, std::size_t i, Symbol z, const std::vector<Colored>& X,
                const std::vector<Colored>& W, const KClass& c, NewRoot reading) {
  return e_prefactor(q, i, z, X, W, reading) * detail::evaluate_frac(c, added_then_removed(X, {i, z}));
}

Frac act_f_frac(const Quiver& q, std::size_t i, Symbol z, const std::vector<Colored>& X,
                const std::vector<Colored>& W, const KClass& c, FWedge wedge) {
  return f_prefactor(q, i, z, X, W, wedge) * detail::evaluate_frac(c, with(X, {i, z}, 1));
}

Frac frac_of(const RatFun& f) {
  Frac r(f.num());
  r.mul(f.den(), -1);
  return r;
}

}  // namespace

RatFun stab_infty(const Quiver& q, const std::vector<Colored>& roots, const DimVector& v1,
                  const std::vector<Colored>& W1, const std::vector<Colored>& W2, const KClass& p1,
                  const KClass& p2, bool prefactor) {
  return stab_sum(q, roots, v1, W1, W2, p1, p2, prefactor).to_ratfun();
}

RatFun act_e(const Quiver& q, std::size_t i, Symbol z, const std::vector<Colored>& X,
             const std::vector<Colored>& W, const KClass& c, NewRoot reading) {
  return act_e_frac(q, i, z, X, W, c, reading).to_ratfun();
}

RatFun act_e(const Quiver& q, std::size_t i, Symbol z, const std::vector<Colored>& X,
             const std::vector<Colored>& W, const RatFun& c, NewRoot reading) {
  return (e_prefactor(q, i, z, X, W, reading) * frac_of(c)).to_ratfun();
}

RatFun cartan_ratio(const Quiver& q, std::size_t i, Symbol z, const std::vector<Colored>& X,
                    const std::vector<Colored>& W) {
  return cartan_frac(q, i, z, X, W).to_ratfun();
}

RatFun act_h(const Quiver& q, std::size_t i, bool, Symbol z, const std::vector<Colored>& X,
             const std::vector<Colored>& W, const RatFun& c) {
  return (cartan_frac(q, i, z, X, W) * frac_of(c)).to_ratfun();
}

RatFun act_f(const Quiver& q, std::size_t i, Symbol z, const std::vector<Colored>& X,
             const std::vector<Colored>& W, const KClass& c, FWedge wedge) {
  return act_f_frac(q, i, z, X, W, c, wedge).to_ratfun();
}

IntertwineReport intertwine_check(const Quiver& q, std::size_t i, const DimVector& v1,
                                  const DimVector& v2, const DimVector& w1, const DimVector& w2,
                                  const KClass& p1, const KClass& p2, const IntertwineOptions& opt) {
  if (i >= q.size()) throw std::invalid_argument("node index out of range");
  const Alphabet X = Alphabet::declare(q, v1 + v2, DimVector(q.size()));
  const Alphabet F1 = Alphabet::declare(q, DimVector(q.size()), w1, "1");
  const Alphabet F2 = Alphabet::declare(q, DimVector(q.size()), w2, "2");
  const auto roots = X.roots();
  const auto W1 = F1.framing_roots(), W2 = F2.framing_roots();
  const auto W = concat(W1, W2);
  const Symbol z = intern("z");
  const Colored zc{i, z};
  const Monomial mq = Monomial::var(q_symbol());
  auto ev = [](const KClass& c, const FormalAlphabet& A) { return detail::evaluate_frac(c, A); };
  IntertwineReport rep;

  // e_i(z): both displays, term by term
  {
    Frac front = detail::zeta_tilde_frac(
        q, singleton(zc), opt.reading == NewRoot::Included ? with(roots, zc, 1) : FormalAlphabet(roots));
    front *= detail::wedge_frac(singleton(zc), W1, mq) * detail::wedge_frac(singleton(zc), W2, mq);
    std::vector<Frac> lhs, rhs;
    for (const auto& [a, b] : splits(roots, v1)) {
      FormalAlphabet A(a), B(b);
      FormalAlphabet B2 = added_then_removed(b, zc), A2 = added_then_removed(a, zc);
      lhs.push_back(front * detail::stab_frac(q, A, W1, B2, W2, false) * ev(p1, A) * ev(p2, B2));
      lhs.push_back(front * detail::stab_frac(q, A2, W1, B, W2, false) * ev(p1, A2) * ev(p2, B));
      rhs.push_back(detail::stab_frac(q, with(a, zc, 1), W1, B, W2, false) *
                    act_e_frac(q, i, z, a, W1, p1, opt.reading) * ev(p2, B));
      rhs.push_back(detail::stab_frac(q, A, W1, with(b, zc, 1), W2, false) * cartan_frac(q, i, z, a, W1) *
                    ev(p1, A) * act_e_frac(q, i, z, b, W2, p2, opt.reading));
    }
    Frac d = detail::difference(lhs, rhs);
    rep.e = d.is_zero();
    rep.e_difference = rep.e ? RatFun(0) : d.to_ratfun();
    if (opt.composed) {
      std::vector<std::pair<Frac, int>> r;
      for (const Frac& t : rhs) r.emplace_back(t, 1);
      Frac composed = e_prefactor(q, i, z, roots, W, opt.reading) *
                      stab_sum(q, roots, v1, W1, W2, p1, p2, false);
      rep.e_composed_ratio =
          composed.is_zero() ? RatFun(0) : (Frac::sum(r) * composed.inverse()).to_ratfun();
    }
  }

  // h_i^{+-}(z)
  {
    Frac front = cartan_frac(q, i, z, roots, W);
    std::vector<Frac> lhs, rhs;
    for (const auto& [a, b] : splits(roots, v1)) {
      FormalAlphabet A(a), B(b);
      Frac base = detail::stab_frac(q, A, W1, B, W2, false) * ev(p1, A) * ev(p2, B);
      lhs.push_back(front * base);
      rhs.push_back(base * cartan_frac(q, i, z, a, W1) * cartan_frac(q, i, z, b, W2));
    }
    Frac d = detail::difference(lhs, rhs);
    rep.h = d.is_zero();
    rep.h_difference = rep.h ? RatFun(0) : d.to_ratfun();
  }

  // f_i(z): z is one of the old roots; the result lives on the remaining ones
  if (opt.include_f) {
    rep.f_ran = true;
    DimVector total = v1 + v2;
    if (total[i] == 0) {
      rep.f = true;
    } else {
      const DimVector ei = DimVector::unit(q.size(), i);
      const auto rest = Alphabet::declare(q, total - ei, DimVector(q.size()), "r").roots();
      Frac front = f_prefactor(q, i, z, rest, W, opt.f_wedge);
      std::vector<Frac> lhs, rhs;
      for (const auto& [a, b] : splits(concat(rest, {zc}), v1)) {
        FormalAlphabet A(a), B(b);
        lhs.push_back(front * detail::stab_frac(q, A, W1, B, W2, false) * ev(p1, A) * ev(p2, B));
      }
      if (v1[i] > 0)
        for (const auto& [a, b] : splits(rest, v1 - ei)) {
          FormalAlphabet A(a), B(b);
          rhs.push_back(detail::stab_frac(q, A, W1, B, W2, false) * act_f_frac(q, i, z, a, W1, p1, opt.f_wedge) *
                        cartan_frac(q, i, z, b, W2) * ev(p2, B));
        }
      if (v2[i] > 0)
        for (const auto& [a, b] : splits(rest, v1)) {
          FormalAlphabet A(a), B(b);
          rhs.push_back(detail::stab_frac(q, A, W1, B, W2, false) * ev(p1, A) *
                        act_f_frac(q, i, z, b, W2, p2, opt.f_wedge));
        }
      Frac d = detail::difference(lhs, rhs);
      rep.f = d.is_zero();
      rep.f_difference = rep.f ? RatFun(0) : d.to_ratfun();
    }
  }
  return rep;
}

}  // namespace kha
