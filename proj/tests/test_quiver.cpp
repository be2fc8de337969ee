#include <random>

#include "doctest.h"
#include "kha/quiver.hpp"
#include "support.hpp"

using namespace kha;
using namespace kha::testing;

TEST_CASE("inner and dot") {
  Quiver j = Quiver::jordan();
  CHECK(inner(j, {1}, {1}) == 1);
  CHECK(dot(DimVector{1}, DimVector{1}) == 1);
  Quiver e({"1", "2"}, {});
  CHECK(inner(e, {3, 1}, {2, 5}) == 0);
  Quiver a2 = Quiver::a2();
  CHECK(inner(a2, {2, 0}, {0, 3}) == 2 * 3 * a2.edge_count(0, 1));
  CHECK(inner(a2, {2, 0}, {0, 3}) == 6);
  CHECK(inner(a2, {0, 3}, {2, 0}) == 0);
  CHECK_THROWS(inner(a2, {1}, {1, 1}));
}

TEST_CASE("zeta examples") {
  Symbol x = S("x");
  CHECK(zeta(Quiver::a1(), 0, 0, x) == R("(1 - x/q)/(1 - x)"));
  CHECK(zeta(Quiver::jordan(), 0, 0, x) == R("(1 - x/q)/(1 - x)*(1 - t*x)*(1 - q/(t*x))"));
  Quiver e({"1", "2"}, {});
  CHECK(zeta(e, 0, 1, x) == RatFun(1));
  CHECK(zeta_tilde(Quiver::a1(), 0, 0, x) == R("1/((1 - x)*(1 - 1/(q*x)))"));
  Quiver a2 = Quiver::a2();
  CHECK(zeta(a2, 0, 1, x) == R("1 - t1*x"));
  CHECK(zeta(a2, 1, 0, x) == R("1 - q/(t1*x)"));
}

TEST_CASE("gamma examples") {
  CHECK(gamma(Quiver::a1(), 0) == R("1/(1 - q^-1)"));
  CHECK(gamma(Quiver::jordan(), 0) == R("(1 - t)*(1 - q/t)/(1 - q^-1)"));
  Quiver two({"1"}, {{"1", "1", "t1"}, {"1", "1", "t2"}});
  CHECK(gamma(two, 0) == R("(1 - t1)*(1 - q/t1)*(1 - t2)*(1 - q/t2)/(1 - q^-1)"));
}

TEST_CASE("zeta_alphabet examples") {
  Quiver a1 = Quiver::a1();
  Symbol z = S("z"), z1 = S("z1"), z2 = S("z2"), x1 = S("x1");
  CHECK(zeta_alphabet(a1, {{0, z}}, {}, Kernel::Zeta) == RatFun(1));
  CHECK(zeta_alphabet(a1, {{0, z1}}, {{0, x1}}, Kernel::Zeta) == R("(1 - z1/(x1*q))/(1 - z1/x1)"));
  std::vector<Colored> Z{{0, z1}, {0, z2}};
  RatFun diag = zeta_alphabet(a1, Z, Z, Kernel::ZetaTildeDiag);
  RatFun by_hand = R("(1 - z1/(z2*q))/(1 - z1/z2) * (1 - z2/(z1*q))/(1 - z2/z1)"
                     " / ((1 - z1/(q*z2))*(1 - z2/(q*z1)))");
  CHECK(diag == by_hand);
}

TEST_CASE("zeta_ij(x) zeta_ji(1/x) symmetry on random quivers") {
  std::mt19937 rng(3);
  Symbol x = S("x");
  RatFun xinv = R("1/x");
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Edge> edges;
    std::uniform_int_distribution<int> node(0, 1), count(0, 3);
    int ne = count(rng);
    for (int k = 0; k < ne; ++k)
      edges.push_back({std::to_string(node(rng) + 1), std::to_string(node(rng) + 1),
                       "t" + std::to_string(k + 1)});
    Quiver q({"1", "2"}, edges);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        RatFun f = zeta(q, i, j, x) * zeta(q, j, i, x).substitute(x, xinv);
        RatFun g = zeta(q, j, i, x).substitute(x, xinv) * zeta(q, i, j, x);
        CHECK(f == g);
        // the edge parts are invariant under x -> 1/x composed with i <-> j
        RatFun h = zeta(q, j, i, x) * zeta(q, i, j, x).substitute(x, xinv);
        CHECK(f.substitute(x, xinv) == h);
      }
    }
  }
}

TEST_CASE("zeta tilde of a loop-free node has no pole at 1 after normalisation") {
  // the self-alphabet kernel: zeta~_ii(x) (1 - x)(1 - 1/(qx)) is regular at x = 1
  Symbol x = S("x");
  RatFun f = zeta_tilde(Quiver::a1(), 0, 0, x) * R("(1 - x)*(1 - 1/(q*x))");
  CHECK(f == RatFun(1));
}

TEST_CASE("zeta_alphabet is multiplicative under disjoint union") {
  Quiver q = Quiver::a2();
  std::vector<Colored> Z{{0, S("z1")}, {1, S("z2")}}, X1{{0, S("x1")}}, X2{{1, S("x2")}, {0, S("x3")}};
  std::vector<Colored> X12 = X1;
  X12.insert(X12.end(), X2.begin(), X2.end());
  for (Kernel k : {Kernel::Zeta, Kernel::ZetaTilde}) {
    CHECK(zeta_alphabet(q, Z, X12, k) == zeta_alphabet(q, Z, X1, k) * zeta_alphabet(q, Z, X2, k));
  }
}

TEST_CASE("quiver json and hash") {
  Quiver q = Quiver::from_json(nlohmann::json::parse(
      R"({"nodes":["2","1"],"edges":[{"src":"1","dst":"2","param":"t1"}]})"));
  CHECK(q == Quiver::a2());
  CHECK(q.hash() == Quiver::a2().hash());
  CHECK(q.hash() != Quiver::jordan().hash());
  CHECK_THROWS(Quiver({"1"}, {{"1", "1", "t"}, {"1", "1", "t"}}));
  CHECK_THROWS(Quiver({"1"}, {{"1", "3", "t"}}));
  CHECK(Slope::parse("0, 1/2", 2).to_string() == "0,1/2");
  CHECK_THROWS(Slope::parse("0.5", 1));
  CHECK(boxed_below({1, 2}).size() == 6);
}
