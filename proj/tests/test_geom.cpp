#include <array>
#include <fstream>
#include <functional>
#include <sstream>

#include "doctest.h"
#include "kha/geom.hpp"
#include "kha/hopf.hpp"
#include "kha/series.hpp"
#include "support.hpp"

using namespace kha;
using namespace kha::testing;

namespace {

std::vector<Colored> colored(std::size_t i, const std::vector<std::string>& names) {
  std::vector<Colored> out;
  for (const auto& n : names) out.emplace_back(i, S(n));
  return out;
}

LaurentPoly swap_symbols(const LaurentPoly& p, Symbol a, Symbol b) {
  std::vector<LaurentPoly::Term> out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Entry> e;
    for (auto [s, k] : m.entries()) e.emplace_back(s == a ? b : s == b ? a : s, k);
    out.emplace_back(Monomial::from_entries(std::move(e)), c);
  }
  return LaurentPoly::from_terms(std::move(out));
}

bool symmetric_in(const RatFun& f, Symbol a, Symbol b) {
  return f.num() * swap_symbols(f.den(), a, b) == swap_symbols(f.num(), a, b) * f.den();
}

struct Unreduced {
  LaurentPoly num{0}, den{1};
  Unreduced& operator+=(const RatFun& f) {
    num = num * f.den() + f.num() * den;
    den *= f.den();
    return *this;
  }
};

std::vector<std::string> power_sum_words(const Quiver& q) {
  std::vector<std::string> out{"1"};
  for (const auto& n : q.nodes()) {
    out.push_back("p1[" + n + "]");
    out.push_back("p2[" + n + "]");
  }
  for (std::size_t a = 0; a < q.size(); ++a)
    for (std::size_t b = a; b < q.size(); ++b)
      out.push_back("p1[" + q.nodes()[a] + "]*p1[" + q.nodes()[b] + "]");
  return out;
}

std::vector<DimVector> dims_up_to(std::size_t n, int total) {
  std::vector<DimVector> out;
  DimVector v(n);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == n) {
      out.push_back(v);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      v[k] = a;
      rec(k + 1, left - a);
    }
  };
  rec(0, total);
  return out;
}

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(KHA_TEST_DATA) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

}  // namespace

TEST_CASE("alphabets name their roots by node") {
  Quiver q = Quiver::a2();
  Alphabet A = Alphabet::declare(q, {2, 1}, {1, 0}, "a");
  CHECK(symbol_name(A.x[0][1]) == "xa_1_2");
  CHECK(symbol_name(A.x[1][0]) == "xa_2_1");
  CHECK(symbol_name(A.framing[0][0]) == "wa_1_1");
  CHECK(A.roots().size() == 3);
  CHECK(A.framing_roots().size() == 1);
  CHECK_THROWS_AS(Alphabet::declare(q, {-1, 0}, {0, 0}), std::invalid_argument);
}

TEST_CASE("plethystic evaluation") {
  Quiver q = Quiver::a1();
  Alphabet A = Alphabet::declare(q, {2}, {0});
  Symbol z = S("z");
  FormalAlphabet X(A.roots());
  FormalAlphabet Xmz = X;
  Xmz.declare(z).minus({0, z});
  CHECK(plethystic_eval({{0, 1}}, Xmz) == R("x_1_1 + x_1_2 - z"));
  CHECK(plethystic_eval({{0, 3}}, FormalAlphabet()).is_zero());
  FormalAlphabet Xpz = X;
  Xpz.declare(z).plus({0, z});
  CHECK(plethystic_eval({{0, 2}}, Xpz) - plethystic_eval({{0, 2}}, X) == R("z^2"));
  CHECK(plethystic_eval({{0, 1}, {0, 1}}, X) == R("(x_1_1 + x_1_2)^2"));
  CHECK(plethystic_eval({}, X) == RatFun(1));
  FormalAlphabet bad;
  CHECK_THROWS_AS(bad.plus({0, z}), std::invalid_argument);
}

TEST_CASE("power-sum expressions parse and print") {
  Quiver q = Quiver::a2();
  KClass c = KClass::parse(q, "p1[1]*p2[2] + 1");
  REQUIRE(c.terms.size() == 2);
  CHECK(c.terms[0].first == PowerSumWord{{0, 1}, {1, 2}});
  CHECK(c.terms[1].first.empty());
  CHECK(c.to_string(q) == "p1[1]*p2[2] + 1");
  CHECK_THROWS_AS(KClass::parse(q, "p1[3]"), std::invalid_argument);
  CHECK_THROWS_AS(KClass::parse(q, "q1[1]"), std::invalid_argument);
  CHECK_THROWS_AS(KClass::parse(q, "px[1]"), std::invalid_argument);
}

TEST_CASE("wedge star") {
  Symbol z = S("z");
  FormalAlphabet Z;
  Z.declare(z).plus({0, z});
  auto W = colored(0, {"w1", "w2"});
  CHECK(wedge_star(Z, W, Monomial::var(q_symbol())) == R("(1 - z*q/w1)*(1 - z*q/w2)"));
  CHECK(wedge_star({}) == RatFun(1));
  Monomial a = Monomial::var(S("a"));
  CHECK(wedge_star({{a, 1}, {a, -1}}) == RatFun(1));
  CHECK(wedge_star({{a, 2}, {Monomial::var(S("b")), -1}}) == R("(1 - a)^2/(1 - b)"));
  // framing of another colour does not pair
  CHECK(wedge_star(Z, colored(1, {"w1"}), Monomial()) == RatFun(1));
}

TEST_CASE("zeta tilde over alphabets skips self pairs") {
  Quiver q = Quiver::a1();
  Symbol x = S("x"), y = S("y");
  FormalAlphabet A;
  A.declare(x).declare(y).plus({0, x}).plus({0, y});
  FormalAlphabet B;
  B.declare(x).plus({0, x});
  RatFun k = R("1/((1 - y/x)*(1 - x/(q*y)))");
  CHECK(zeta_tilde(q, A, B) == k);
  FormalAlphabet C = B;
  C.minus({0, x});
  CHECK(zeta_tilde(q, A, C) == RatFun(1));
}

TEST_CASE("Stab restriction examples") {
  Quiver q = Quiver::a1();
  SUBCASE("empty first part") {
    Alphabet first = Alphabet::declare(q, {0}, {2}, "a");
    Alphabet second = Alphabet::declare(q, {1}, {1}, "b");
    CHECK(stab_infty_class(q, first, second) == R("(1 - xb_1_1/wa_1_1)*(1 - xb_1_1/wa_1_2)"));
  }
  SUBCASE("everything empty") {
    Alphabet first = Alphabet::declare(q, {0}, {0}, "a");
    Alphabet second = Alphabet::declare(q, {0}, {0}, "b");
    CHECK(stab_infty_class(q, first, second) == RatFun(1));
  }
  SUBCASE("one root and one framing on each side") {
    Alphabet first = Alphabet::declare(q, {1}, {1}, "a");
    Alphabet second = Alphabet::declare(q, {1}, {1}, "b");
    RatFun got = stab_infty_class(q, first, second);
    RatFun hand = R("(1 - q*xa_1_1/wb_1_1)*(1 - xb_1_1/wa_1_1)/((1 - xa_1_1/xb_1_1)*(1 - xb_1_1/(q*xa_1_1)))");
    CHECK(got == hand);
    // printed term order follows interning order, so compare values
    CHECK(got == R(read_golden("stab_a1_minimal.txt")));
  }
}

TEST_CASE("Stab prefactor toggle multiplies by one monomial") {
  for (const Quiver& q : {Quiver::a1(), Quiver::jordan(), Quiver::a2()}) {
    for (const DimVector& v1 : dims_up_to(q.size(), 2))
      for (const DimVector& v2 : dims_up_to(q.size(), 1)) {
        DimVector w1(q.size(), 1), w2(q.size(), 2);
        Alphabet first = Alphabet::declare(q, v1, w1, "a");
        Alphabet second = Alphabet::declare(q, v2, w2, "b");
        RatFun off = stab_infty_class(q, first, second, false);
        RatFun on = stab_infty_class(q, first, second, true);
        int e = dot(w2, v1) - inner(q, v2, v1);
        CHECK(stab_prefactor_exponent(q, v1, w1, v2, w2) == e);
        CHECK(on == off * RatFun(LaurentPoly::var(sqrt_q_symbol(), e)));
      }
  }
}

TEST_CASE("splits enumerate colour blocks") {
  auto roots = colored(0, {"a", "b", "c"});
  roots.emplace_back(1, S("d"));
  auto s = splits(roots, {2, 1});
  CHECK(s.size() == 3);
  for (const auto& [a, b] : s) {
    CHECK(a.size() == 3);
    CHECK(b.size() == 1);
  }
  CHECK(splits(roots, {1, 0}).size() == 3);
  CHECK(splits(roots, {4, 0}).empty());
}

TEST_CASE("e action examples") {
  Quiver q = Quiver::a1();
  Symbol z = S("z");
  auto W = colored(0, {"w1", "w2"});
  CHECK(act_e(q, 0, z, {}, W, KClass::one()) == R("(1 - z*q/w1)*(1 - z*q/w2)"));
  auto X = colored(0, {"x"});
  RatFun got = act_e(q, 0, z, X, colored(0, {"w"}), KClass::parse(q, "p1[1]"));
  CHECK(got == R("x*(1 - z*q/w)/((1 - z/x)*(1 - x/(q*z)))"));
  // both readings of the new-root alphabet give the same function
  for (const char* p : {"1", "p1[1]", "p2[1]*p1[1]"}) {
    KClass c = KClass::parse(q, p);
    auto X2 = colored(0, {"x1", "x2"});
    CHECK(act_e(q, 0, z, X2, W, c, NewRoot::Included) == act_e(q, 0, z, X2, W, c, NewRoot::Excluded));
  }
  // an already evaluated class takes the same prefactor
  CHECK(act_e(q, 0, z, X, colored(0, {"w"}), R("x")) == got);
}

TEST_CASE("h action examples") {
  Quiver q = Quiver::a1();
  Symbol z = S("z");
  auto W = colored(0, {"w"});
  RatFun c = R("c");
  CHECK(act_h(q, 0, false, z, {}, W, c) == R("c*(1 - z*q/w)/(1 - z/w)"));
  CHECK(act_h(q, 0, true, z, {}, {}, c) == c);
  auto X = colored(0, {"x1", "x2"});
  RatFun once = act_h(q, 0, false, z, X, W, RatFun(1));
  CHECK(act_h(q, 0, false, z, X, W, once) == once * once);
  CHECK(act_h(q, 0, true, z, X, W, c) == act_h(q, 0, false, z, X, W, c));
}

TEST_CASE("actions are symmetric in old roots of one colour") {
  Symbol z = S("z");
  for (const Quiver& q : {Quiver::a1(), Quiver::jordan()}) {
    auto X = colored(0, {"x1", "x2"});
    auto W = colored(0, {"w1", "w2"});
    for (const char* p : {"1", "p1[1]", "p2[1]", "p1[1]*p1[1]"}) {
      KClass c = KClass::parse(q, p);
      RatFun e = act_e(q, 0, z, X, W, c);
      CHECK(symmetric_in(e, S("x1"), S("x2")));
      RatFun h = act_h(q, 0, false, z, X, W, c.evaluate(FormalAlphabet(X)));
      CHECK(symmetric_in(h, S("x1"), S("x2")));
      RatFun f = act_f(q, 0, z, X, W, c);
      CHECK(symmetric_in(f, S("x1"), S("x2")));
    }
  }
  Quiver q = Quiver::a2();
  std::vector<Colored> X = colored(0, {"x1", "x2"});
  X.emplace_back(1, S("y1"));
  RatFun e = act_e(q, 1, z, X, colored(1, {"w"}), KClass::parse(q, "p1[1]*p1[2]"));
  CHECK(symmetric_in(e, S("x1"), S("x2")));
}

TEST_CASE("the Cartan current expansion matches the h action without edges") {
  Quiver q = Quiver::a1();
  Symbol z = S("z");
  for (bool minus : {false, true})
    for (int v = 0; v <= 2; ++v)
      for (int w = 0; w <= 2; ++w) {
        Alphabet A = Alphabet::declare(q, {v}, {w});
        RatFun r = cartan_ratio(q, 0, z, A.roots(), A.framing_roots());
        LaurentSeries s = series_expand(r, z, minus ? Point::Zero : Point::Infinity, 3);
        REQUIRE(s.valuation == 0);
        CartanSeries cs = cartan_current(q, 0, minus, 2, {v}, {w});
        for (int k = 0; k <= 2; ++k)
          CHECK(evaluate_cartan_symbols(q, cs.coefficients[k], A.x, A.framing, 3) ==
                s.coefficients[k] / s.coefficients[0]);
      }
}

TEST_CASE("intertwining examples") {
  Quiver q = Quiver::a1();
  KClass one = KClass::one(), p1 = KClass::parse(q, "p1[1]");
  IntertwineReport r = intertwine_check(q, 0, {0}, {0}, {0}, {0}, one, one);
  CHECK(r.e);
  CHECK(r.h);
  CHECK(!r.f_ran);
  r = intertwine_check(q, 0, {1}, {0}, {1}, {1}, p1, p1);
  CHECK(r.ok());
  CHECK(r.e_difference.is_zero());
}

TEST_CASE("intertwining displays agree with plain rational arithmetic") {
  // The check cancels matching terms before summing; redo a few cases with
  // unreduced fractions and compare by cross multiplication.
  Symbol z = S("z");
  for (const Quiver& q : {Quiver::a1(), Quiver::jordan()})
    for (auto [a, b, w1, w2] : std::vector<std::array<int, 4>>{{1, 0, 1, 1}, {1, 1, 1, 0}, {0, 2, 1, 1}, {2, 0, 0, 1}}) {
      KClass p1 = KClass::parse(q, "p1[1]"), p2 = KClass::parse(q, "p2[1] + 1");
      Alphabet X = Alphabet::declare(q, {a + b}, {0});
      Alphabet F1 = Alphabet::declare(q, {0}, {w1}, "1"), F2 = Alphabet::declare(q, {0}, {w2}, "2");
      auto roots = X.roots();
      auto W1 = F1.framing_roots(), W2 = F2.framing_roots();
      auto W = W1;
      W.insert(W.end(), W2.begin(), W2.end());
      FormalAlphabet Z;
      Z.declare(z).plus({0, z});
      Monomial mq = Monomial::var(q_symbol());
      RatFun front = zeta_tilde(q, Z, FormalAlphabet(roots)) * wedge_star(Z, W1, mq) * wedge_star(Z, W2, mq);
      Unreduced lhs, rhs, composed;
      for (const auto& [xa, xb] : splits(roots, {a})) {
        FormalAlphabet A(xa), B(xb);
        RatFun base = stab_infty_class(q, A, W1, B, W2) * p1.evaluate(A) * p2.evaluate(B);
        lhs += front * base * RatFun(2);
        composed += base;
        auto az = xa, bz = xb;
        az.emplace_back(0, z);
        bz.emplace_back(0, z);
        rhs += stab_infty_class(q, FormalAlphabet(az), W1, B, W2) * act_e(q, 0, z, xa, W1, p1) * p2.evaluate(B);
        rhs += stab_infty_class(q, A, W1, FormalAlphabet(bz), W2) * cartan_ratio(q, 0, z, xa, W1) *
               p1.evaluate(A) * act_e(q, 0, z, xb, W2, p2);
      }
      CHECK(lhs.num * rhs.den == rhs.num * lhs.den);
      IntertwineOptions opt;
      opt.composed = true;
      IntertwineReport rep = intertwine_check(q, 0, {a}, {b}, {w1}, {w2}, p1, p2, opt);
      CHECK(rep.e);
      CHECK(rep.h);
      if (!composed.num.is_zero()) CHECK(rep.e_composed_ratio == RatFun(2));
    }
}

TEST_CASE("intertwining holds on every small A1 and Jordan configuration") {
  for (const Quiver& q : {Quiver::a1(), Quiver::jordan()}) {
    auto words = power_sum_words(q);
    int checked = 0, failed = 0;
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; a + b <= 2; ++b)
        for (int w1 = 0; w1 <= 2; ++w1)
          for (int w2 = 0; w2 <= 2; ++w2)
            for (const auto& s1 : words)
              for (const auto& s2 : words) {
                IntertwineOptions opt;
                opt.reading = (checked % 2) ? NewRoot::Excluded : NewRoot::Included;
                auto r = intertwine_check(q, 0, {a}, {b}, {w1}, {w2}, KClass::parse(q, s1), KClass::parse(q, s2), opt);
                ++checked;
                if (!r.ok()) ++failed;
              }
    CHECK(checked == 6 * 9 * 16);
    CHECK(failed == 0);
  }
}

TEST_CASE("intertwining holds on small A2 configurations at both nodes") {
  Quiver q = Quiver::a2();
  std::vector<std::string> words{"1", "p1[1]", "p1[2]", "p1[1]*p1[2]", "p2[2]"};
  int failed = 0, checked = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (const DimVector& v1 : dims_up_to(2, 2))
      for (const DimVector& v2 : dims_up_to(2, 2 - v1.total()))
        for (int w = 0; w < 16; ++w) {
          DimVector w1{w & 1, (w >> 1) & 1}, w2{(w >> 2) & 1, (w >> 3) & 1};
          for (const auto& s1 : words)
            for (const auto& s2 : words) {
              IntertwineOptions opt;
              opt.include_f = true;
              opt.f_wedge = FWedge::Inverse;
              auto r = intertwine_check(q, i, v1, v2, w1, w2, KClass::parse(q, s1), KClass::parse(q, s2), opt);
              ++checked;
              if (!r.ok()) ++failed;
            }
        }
  CHECK(checked == 2 * 15 * 16 * 25);
  CHECK(failed == 0);
}

TEST_CASE("f suite depends on the power of wedge(z/W)") {
  for (const Quiver& q : {Quiver::a1(), Quiver::jordan()}) {
    KClass p1 = KClass::parse(q, "p1[1]"), one = KClass::one();
    IntertwineOptions lit;
    lit.include_f = true;
    IntertwineOptions inv = lit;
    inv.f_wedge = FWedge::Inverse;
    auto r = intertwine_check(q, 0, {1}, {0}, {0}, {1}, p1, one, lit);
    CHECK(r.f_ran);
    CHECK_FALSE(r.f);
    CHECK_FALSE(r.f_difference.is_zero());
    CHECK_FALSE(r.ok());
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; a + b <= 2; ++b)
        for (int w1 = 0; w1 <= 2; ++w1)
          for (int w2 = 0; w2 <= 2; ++w2)
            for (const char* s : {"1", "p1[1]", "p2[1]"}) {
              KClass c = KClass::parse(q, s);
              auto ri = intertwine_check(q, 0, {a}, {b}, {w1}, {w2}, c, p1, inv);
              CHECK(ri.f);
              // without framing the two conventions coincide
              if (w1 + w2 == 0) CHECK(intertwine_check(q, 0, {a}, {b}, {0}, {0}, c, p1, lit).f);
            }
  }
}
