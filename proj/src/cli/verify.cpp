#include "kha/verify.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace kha {

namespace {

constexpr std::size_t kMaxDumps = 5;

ShuffleElement random_element(std::mt19937& rng, const QuiverPtr& q, const DimVector& n, int terms,
                              int lo, int hi, Side side = Side::Positive) {
  std::uniform_int_distribution<int> ex(lo, hi), co(-2, 2);
  ShuffleElement acc(q, n, LaurentPoly(), LaurentPoly(1), side);
  for (int k = 0; k < terms; ++k) {
    Orbit o(q->size());
    for (std::size_t i = 0; i < q->size(); ++i)
      for (int a = 0; a < n[i]; ++a) o[i].push_back(ex(rng));
    int c = co(rng);
    acc = acc + orbit_sum(q, n, o, side) * RatFun(c == 0 ? 1 : c);
  }
  return acc;
}

// Orbit sums whose exponents add up to vdeg.
ShuffleElement random_homogeneous(std::mt19937& rng, const QuiverPtr& q, const DimVector& n, int vdeg,
                                  int terms, int lo, int hi, Side side = Side::Positive) {
  std::uniform_int_distribution<int> ex(lo, hi), co(1, 3);
  ShuffleElement acc(q, n, LaurentPoly(), LaurentPoly(1), side);
  int made = 0;
  for (int tries = 0; made < terms && tries < 200; ++tries) {
    Orbit o(q->size());
    int sum = 0;
    for (std::size_t i = 0; i < q->size(); ++i)
      for (int a = 0; a < n[i]; ++a) {
        o[i].push_back(ex(rng));
        sum += o[i].back();
      }
    if (sum != vdeg) continue;
    acc = acc + orbit_sum(q, n, o, side) * RatFun(co(rng));
    ++made;
  }
  return acc;
}

DimVector random_unit(std::mt19937& rng, std::size_t nodes) {
  std::uniform_int_distribution<std::size_t> pick(0, nodes - 1);
  return DimVector::unit(nodes, pick(rng));
}

nlohmann::json elements(const std::vector<ShuffleElement>& xs) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : xs) j.push_back(x.to_json());
  return j;
}

// The largest pieces checked by the structural suites.
DimVector structure_cutoff(const Quiver& q) { return DimVector(q.size(), q.size() == 1 ? 2 : 1); }

std::vector<DimVector> pieces_up_to(const DimVector& cutoff) {
  std::vector<DimVector> out;
  for (const DimVector& n : boxed_below(cutoff))
    if (!n.is_zero()) out.push_back(n);
  return out;
}

template <class F>
SuiteResult timed(const std::string& name, F body) {
  auto start = std::chrono::steady_clock::now();
  SuiteResult r;
  r.name = name;
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

void SuiteResult::record(bool ok, const std::string& what, nlohmann::json data) {
  ++checked;
  if (ok) return;
  ++failed;
  if (counterexamples.size() < kMaxDumps) counterexamples.push_back({what, std::move(data)});
}

void SuiteResult::merge(const SuiteResult& o) {
  checked += o.checked;
  failed += o.failed;
  seconds += o.seconds;
  for (const auto& n : o.notes) notes.push_back(o.name + ": " + n);
  for (const auto& c : o.counterexamples)
    if (counterexamples.size() < kMaxDumps) counterexamples.push_back({o.name + ": " + c.what, c.data});
}

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json j;
  j["suite"] = name;
  j["status"] = passed() ? "PASS" : "FAIL";
  j["checked"] = checked;
  j["failed"] = failed;
  j["notes"] = notes;
  j["counterexamples"] = nlohmann::json::array();
  for (const auto& c : counterexamples) j["counterexamples"].push_back({{"what", c.what}, {"data", c.data}});
  return j;
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

SuiteResult associativity_suite(QuiverPtr q, const SuiteOptions& opt) {
  return timed("associativity", [&](SuiteResult& r) {
    std::mt19937 rng(opt.seed);
    std::uniform_int_distribution<int> part(0, 2), units(1, 3);
    const int cases = opt.cases ? opt.cases : 100;
    for (int rep = 0; rep < cases; ++rep) {
      std::vector<DimVector> n(3, DimVector(q->size()));
      int total = units(rng);
      for (int u = 0; u < total; ++u) {
        DimVector& slot = n[part(rng)];
        slot = slot + random_unit(rng, q->size());
      }
      ShuffleElement F = random_element(rng, q, n[0], 2, -2, 2);
      ShuffleElement G = random_element(rng, q, n[1], 2, -2, 2);
      ShuffleElement H = random_element(rng, q, n[2], 2, -2, 2);
      ShuffleElement left = shuffle_product(shuffle_product(F, G), H);
      ShuffleElement right = shuffle_product(F, shuffle_product(G, H));
      bool ok = left == right && left.hdeg() == n[0] + n[1] + n[2];
      r.record(ok, "(F*G)*H != F*(G*H)", elements({F, G, H}));
    }
  });
}

SuiteResult pole_suite(QuiverPtr q, const SuiteOptions& opt) {
  return timed("poles", [&](SuiteResult& r) {
    std::mt19937 rng(opt.seed);
    std::uniform_int_distribution<int> len(1, 2);
    const int cases = opt.cases ? opt.cases : 100;
    for (int rep = 0; rep < cases; ++rep) {
      DimVector nf(q->size()), ng(q->size());
      for (int u = len(rng); u > 0; --u) nf = nf + random_unit(rng, q->size());
      for (int u = len(rng); u > 0; --u) ng = ng + random_unit(rng, q->size());
      ShuffleElement F = random_element(rng, q, nf, 2, -2, 2);
      ShuffleElement G = random_element(rng, q, ng, 2, -2, 2);
      bool ok = true;
      try {
        ShuffleElement P = shuffle_product(F, G);
        VarTable vt = P.vars();
        for (const auto& [m, c] : P.den().terms()) ok = ok && vt.zdegree(m) == 0 && vt.split(m).first.is_one();
        ok = ok && P.is_symmetric();
      } catch (const std::domain_error&) {
        ok = false;
      }
      r.record(ok, "product keeps a z denominator", elements({F, G}));
    }
  });
}

SuiteResult wheel_closure_suite(QuiverPtr q, const SuiteOptions& opt) {
  return timed("wheel-closure", [&](SuiteResult& r) {
    std::vector<ShuffleElement> gens;
    for (std::size_t i = 0; i < q->size(); ++i)
      for (int d = -2; d <= 2; ++d) gens.push_back(ShuffleElement::generator(q, i, d));
    std::function<void(const ShuffleElement&, int)> grow = [&](const ShuffleElement& P, int left) {
      if (left == 0) return;
      for (const auto& g : gens) {
        ShuffleElement next = shuffle_product(P, g);
        r.record(wheel_check(next, opt.wheels), "product of generators fails wheel_check", next.to_json());
        grow(next, left - 1);
      }
    };
    grow(ShuffleElement::constant(q, RatFun(1)), 3);
  });
}

SuiteResult slope_closure_suite(QuiverPtr q, const SuiteOptions& opt) {
  return timed("slope-closure", [&](SuiteResult& r) {
    std::mt19937 rng(opt.seed);
    Slope m(q->size());
    const int want = opt.cases ? opt.cases : 20;
    int tested = 0;
    for (int rep = 0; rep < 40 * want && tested < want; ++rep) {
      ShuffleElement F = random_element(rng, q, random_unit(rng, q->size()), 2, -2, 1);
      ShuffleElement G = random_element(rng, q, random_unit(rng, q->size()), 2, -2, 1);
      if (!slope_leq(F, m) || !slope_leq(G, m)) continue;
      ++tested;
      r.record(slope_leq(shuffle_product(F, G), m), "product leaves the slope", elements({F, G}));
    }
    r.notes.push_back(std::to_string(tested) + " random pairs at slope " + m.to_string());
  });
}

SuiteResult pairing_suite(QuiverPtr q, const SuiteOptions&) {
  return timed("pairing", [&](SuiteResult& r) {
    for (std::size_t i = 0; i < q->size(); ++i)
      for (std::size_t j = 0; j < q->size(); ++j)
        for (int d = -3; d <= 3; ++d)
          for (int k = -3; k <= 3; ++k) {
            ShuffleElement e = ShuffleElement::generator(q, i, d);
            ShuffleElement f = ShuffleElement::generator(q, j, k, Side::Negative);
            RatFun want = (i == j && d + k == 0) ? gamma(*q, i) : RatFun(0);
            RatFun got = pair(e, f);
            r.record(got == want, "<e_{i,d}, f_{j,k}> mismatch",
                     {{"i", q->nodes()[i]}, {"j", q->nodes()[j]}, {"d", d}, {"k", k},
                      {"got", got.to_string()}, {"want", want.to_string()}});
          }
    for (std::size_t i = 0; i < q->size(); ++i)
      r.notes.push_back("<e_0, f_0> at node " + q->nodes()[i] + " = " +
                        pair(ShuffleElement::generator(q, i, 0), ShuffleElement::generator(q, i, 0, Side::Negative))
                            .to_string());
  });
}

SuiteResult bialgebra_suite(QuiverPtr q, const SuiteOptions& opt) {
  return timed("bialgebra", [&](SuiteResult& r) {
    std::mt19937 rng(opt.seed);
    std::uniform_int_distribution<int> dv(-1, 1);
    const int want = opt.cases ? opt.cases : 50;
    for (int tries = 0; static_cast<int>(r.checked) < want && tries < 4 * want; ++tries) {
      DimVector nf = random_unit(rng, q->size()), ng = random_unit(rng, q->size());
      // total hdeg 3 only where the pairing stays cheap
      if (q->size() == 1 && q->edges().empty() && tries % 3 == 2) nf = nf + nf;
      int vf = dv(rng), vg = dv(rng);
      ShuffleElement F = random_homogeneous(rng, q, nf, vf, 2, -1, 1);
      ShuffleElement G = random_homogeneous(rng, q, ng, vg, 1, -1, 1);
      ShuffleElement H = random_homogeneous(rng, q, nf + ng, -vf - vg, 3, -2, 2, Side::Negative);
      if (F.is_zero() || G.is_zero() || H.is_zero()) continue;
      r.record(bialgebra_check(F, G, H, 8), "<F*G, H> != <F (x) G, Delta(H)>", elements({F, G, H}));
    }
  });
}

SuiteResult slope_structure_suite(QuiverPtr q, const SuiteOptions& opt) {
  return timed("slope-structure", [&](SuiteResult& r) {
    Slope m(q->size());
    const DimVector top(q->size(), q->size() == 1 ? 3 : 1);
    for (const DimVector& n : boxed_below(top)) {
      GradedPiece g = slope_basis(q, m, n, Side::Positive, opt.wheels);
      std::size_t k = slope_orbits(*q, m, n, Side::Positive).size();
      std::vector<std::size_t> perm(k);
      for (std::size_t a = 0; a < k; ++a) perm[a] = k - 1 - a;
      GradedPiece h = slope_basis(q, m, n, Side::Positive, opt.wheels, perm);
      bool same = h.basis.size() == g.basis.size();
      for (std::size_t a = 0; same && a < g.basis.size(); ++a) same = h.basis[a] == g.basis[a];
      r.record(same, "basis depends on enumeration order", {{"hdeg", n.to_string()}});
      r.notes.push_back("dim B_{0|" + n.to_string() + "} = " + std::to_string(g.basis.size()));
      for (const auto& E : g.basis) {
        bool ok = slope_test(E, m) && naive_slope_eq(E, m) && wheel_check(E, opt.wheels);
        r.record(ok, "basis member fails a membership test", E.to_json());
      }
    }
    DimVector cutoff = structure_cutoff(*q);
    r.record(primitives_generate(q, m, cutoff, opt.wheels), "primitives do not generate",
             {{"cutoff", cutoff.to_string()}});
  });
}

SuiteResult slope_coproduct_suite(QuiverPtr q, const SuiteOptions& opt) {
  return timed("slope-coproduct", [&](SuiteResult& r) {
    Slope m(q->size());
    for (const DimVector& n : pieces_up_to(structure_cutoff(*q)))
      for (Side side : {Side::Positive, Side::Negative}) {
        for (const auto& E : slope_basis(q, m, n, side, opt.wheels).basis) {
          bool legs = true;
          for (const auto& s : coproduct_slope(E, m).summands())
            legs = legs && naive_slope_eq(s.legs[0], m) && slope_test(s.legs[1], m) && naive_slope_eq(s.legs[1], m);
          r.record(legs, "coproduct leg outside the slope subalgebra", E.to_json());
          r.record(coassoc_check(E, m), "slope coproduct not coassociative", E.to_json());
        }
        for (const auto& P : primitives(q, m, n, side, opt.wheels))
          r.record(primitive_check(P, m), "primitive element fails F (x) 1 + h (x) F", P.to_json());
      }
  });
}

SuiteResult right_leg_suite(QuiverPtr q, const SuiteOptions& opt) {
  return timed("right-legs", [&](SuiteResult& r) {
    Slope m(q->size());
    for (const DimVector& n : pieces_up_to(structure_cutoff(*q)))
      for (const auto& E : slope_basis(q, m, n, Side::Positive, opt.wheels).basis) {
        bool ok = true;
        for (const auto& s : coproduct_full(E, 3).summands()) {
          const ShuffleElement& right = s.legs[1];
          Rational bound = dot(m, right.hdeg());
          for (const auto& [mono, c] : right.terms()) ok = ok && Rational(right.vars().zdegree(mono)) <= bound;
        }
        r.record(ok, "right leg above the slope bound", E.to_json());
      }
  });
}

SuiteResult quasi_triangular_suite(QuiverPtr q, const SuiteOptions& opt) {
  return timed("quasi-triangularity", [&](SuiteResult& r) {
    DimVector cutoff = structure_cutoff(*q);
    QuasiTriangularReport rep = quasi_triangularity_check(q, Slope(q->size()), cutoff, opt.wheels);
    r.record(rep.left, "(Delta_m (x) id) R != R13 R23", {{"cutoff", cutoff.to_string()}});
    r.record(rep.right, "(id (x) Delta_m) R != R13 R12", {{"cutoff", cutoff.to_string()}});
  });
}

SuiteResult hopf_suite(QuiverPtr q, const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "hopf";
  for (auto suite : {bialgebra_suite, slope_coproduct_suite, right_leg_suite, quasi_triangular_suite})
    r.merge(suite(q, opt));
  return r;
}

SuiteResult intertwine_suite(QuiverPtr q, const SuiteOptions& opt) {
  return timed("intertwine", [&](SuiteResult& r) {
    const int framing = opt.framing;
    std::vector<KClass> words;
    std::vector<std::string> names = power_sum_words(*q);
    for (const auto& w : names) words.push_back(KClass::parse(*q, w));
    std::vector<DimVector> framings;
    for (const DimVector& w : boxed_below(DimVector(q->size(), framing))) framings.push_back(w);
    for (std::size_t i = 0; i < q->size(); ++i)
      for (const DimVector& v1 : dims_up_to(q->size(), 2))
        for (const DimVector& v2 : dims_up_to(q->size(), 2 - v1.total()))
          for (const DimVector& w1 : framings)
            for (const DimVector& w2 : framings)
              for (std::size_t a = 0; a < words.size(); ++a)
                for (std::size_t b = 0; b < words.size(); ++b) {
                  IntertwineReport rep = intertwine_check(*q, i, v1, v2, w1, w2, words[a], words[b]);
                  nlohmann::json config = {{"i", q->nodes()[i]},  {"v1", v1.to_string()},
                                           {"v2", v2.to_string()}, {"w1", w1.to_string()},
                                           {"w2", w2.to_string()}, {"p1", names[a]},
                                           {"p2", names[b]}};
                  if (!rep.e) config["e_difference"] = rep.e_difference.to_string();
                  if (!rep.h) config["h_difference"] = rep.h_difference.to_string();
                  r.record(rep.ok(), "intertwining fails", config);
                }
    r.notes.push_back("framing entries up to " + std::to_string(framing) + ", " +
                      std::to_string(words.size()) + " power-sum words");
  });
}

std::vector<std::string> suite_names() {
  return {"associativity", "poles",     "wheel-closure", "slope-closure", "slope-structure",
          "pairing",       "bialgebra", "hopf",          "intertwine"};
}

SuiteResult run_suite(const std::string& name, QuiverPtr q, const SuiteOptions& opt) {
  static const std::map<std::string, std::function<SuiteResult(QuiverPtr, const SuiteOptions&)>> table = {
      {"associativity", associativity_suite}, {"poles", pole_suite},
      {"wheel-closure", wheel_closure_suite}, {"pairing", pairing_suite},
      {"bialgebra", bialgebra_suite},         {"hopf", hopf_suite},
      {"intertwine", intertwine_suite},       {"slope-structure", slope_structure_suite},
      {"slope-closure",
       [](QuiverPtr q, const SuiteOptions& opt) {
         SuiteResult r;
         r.name = "slope-closure";
         r.merge(slope_closure_suite(q, opt));
         r.merge(slope_structure_suite(q, opt));
         return r;
       }}};
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown suite '" + name + "'");
  return it->second(std::move(q), opt);
}

}  // namespace kha
