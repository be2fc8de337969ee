#pragma once

#include <random>
#include <string>
#include <vector>

#include "kha/parse.hpp"
#include "kha/ratfun.hpp"

namespace kha::testing {

inline RatFun R(const std::string& s) { return parse_ratfun(s, true); }
inline LaurentPoly P(const std::string& s) {
  RatFun r = R(s);
  if (!r.is_polynomial()) throw std::invalid_argument("not a polynomial: " + s);
  return r.num();
}
inline Symbol S(const std::string& s) { return intern(s); }

/// Random sparse Laurent polynomial in the given symbols.
inline LaurentPoly random_poly(std::mt19937& rng, const std::vector<Symbol>& vars, int terms,
                               int lo, int hi) {
  std::uniform_int_distribution<int> ex(lo, hi), co(-3, 3);
  LaurentPoly p;
  for (int k = 0; k < terms; ++k) {
    std::vector<Monomial::Entry> es;
    for (Symbol v : vars) es.emplace_back(v, ex(rng));
    p += LaurentPoly(Monomial::from_entries(es), co(rng));
  }
  return p;
}

inline RatFun random_ratfun(std::mt19937& rng, const std::vector<Symbol>& vars) {
  LaurentPoly d;
  while (d.is_zero()) d = random_poly(rng, vars, 2, 0, 1);
  return RatFun::normalize(random_poly(rng, vars, 3, -1, 1), d);
}

}  // namespace kha::testing
