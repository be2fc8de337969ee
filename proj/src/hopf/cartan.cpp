#include <stdexcept>

#include "kha/hopf.hpp"

namespace kha {

namespace {

std::string mode_name(int d) { return d < 0 ? "m" + std::to_string(-d) : std::to_string(d); }

Symbol a_symbol(const Quiver& q, std::size_t i, int d) {
  return intern("a_" + q.nodes()[i] + "_" + mode_name(d));
}

Symbol b_symbol(const Quiver& q, std::size_t i, int d) {
  return intern("b_" + q.nodes()[i] + "_" + mode_name(d));
}

}  // namespace

std::vector<CartanFactor> cartan_current_formal(std::size_t i, bool minus, int order) {
  if (order < 0) throw std::invalid_argument("negative order");
  std::vector<CartanFactor> out;
  for (int p = 0; p <= order; ++p) out.push_back({i, p, minus, 1});
  return out;
}

CartanSeries cartan_current(const Quiver& q, std::size_t i, bool minus, int order, const DimVector& v,
                            const DimVector& w) {
  if (order < 0) throw std::invalid_argument("negative order");
  check_compatible(q, v);
  check_compatible(q, w);
  const int sign = minus ? -1 : 1;
  int e = w[i] - 2 * v[i];
  for (std::size_t j = 0; j < q.size(); ++j) e += (q.edge_count(i, j) + q.edge_count(j, i)) * v[j];
  CartanSeries s;
  s.q_exponent = Rational(sign * e, 2);
  s.q_exponent.canonicalize();
  const LaurentPoly Q = LaurentPoly::var(q_symbol());
  std::vector<LaurentPoly> g(order + 1);
  for (int d = 1; d <= order; ++d) {
    int sd = sign * d;
    LaurentPoly qd = pow_var(q_symbol(), sd);
    LaurentPoly gd = LaurentPoly::var(b_symbol(q, i, sd)) - LaurentPoly::var(a_symbol(q, i, sd)) * (LaurentPoly(1) + qd);
    for (std::size_t j = 0; j < q.size(); ++j) {
      for (Symbol t : q.params(i, j)) gd += LaurentPoly::var(a_symbol(q, j, sd)) * qd * pow_var(t, -sd);
      for (Symbol t : q.params(j, i)) gd += LaurentPoly::var(a_symbol(q, j, sd)) * pow_var(t, sd);
    }
    g[d] = gd;
  }
  std::vector<LaurentPoly> c(order + 1);
  c[0] = LaurentPoly(1);
  for (int n = 1; n <= order; ++n) {
    LaurentPoly acc;
    for (int k = 1; k <= n; ++k) acc += g[k] * c[n - k];
    c[n] = acc * Rational(1, n);
  }
  for (auto& p : c) s.coefficients.emplace_back(p);
  return s;
}

RatFun evaluate_cartan_symbols(const Quiver& q, const RatFun& f, const std::vector<std::vector<Symbol>>& X,
                               const std::vector<std::vector<Symbol>>& W, int max_d) {
  RatFun r = f;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (int d = -max_d; d <= max_d; ++d) {
      if (d == 0) continue;
      RatFun factor = RatFun(1) - RatFun(pow_var(q_symbol(), -d));
      LaurentPoly px, pw;
      if (i < X.size())
        for (Symbol x : X[i]) px += pow_var(x, d);
      if (i < W.size())
        for (Symbol x : W[i]) pw += pow_var(x, d);
      r = r.substitute(a_symbol(q, i, d), factor * RatFun(px));
      r = r.substitute(b_symbol(q, i, d), factor * RatFun(pw));
    }
  return r;
}

}  // namespace kha
