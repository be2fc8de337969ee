#pragma once

#include <map>
#include <vector>

#include "kha/geom.hpp"

namespace kha::detail {

// A numerator over a product of unit-normal factors. Products cancel factors
// exactly and sums use the least common multiple, so no gcd is ever taken.
class Frac {
 public:
  Frac() : num_(1) {}
  explicit Frac(LaurentPoly num) : num_(std::move(num)) {}

  // Multiplies by f^e.
  void mul(const LaurentPoly& f, int e = 1);
  Frac& operator*=(const Frac& o);
  friend Frac operator*(Frac a, const Frac& b) { return a *= b; }
  Frac inverse() const;

  const LaurentPoly& num() const { return num_; }
  bool is_zero() const { return num_.is_zero(); }
  RatFun to_ratfun() const;

  static Frac sum(const std::vector<std::pair<Frac, int>>& terms);
  bool equals(const Frac& o) const;

 private:
  LaurentPoly num_;
  std::map<LaurentPoly, int> den_;
  std::map<LaurentPoly, int> numf_;  // factors of num_ that may still cancel
};

// sum(lhs) - sum(rhs). Terms that agree pairwise are cancelled first, so the
// common denominator is only formed for what is left.
Frac difference(std::vector<Frac> lhs, std::vector<Frac> rhs);

Frac zeta_tilde_frac(const Quiver& q, const FormalAlphabet& A, const FormalAlphabet& B);
Frac wedge_frac(const FormalAlphabet& A, const std::vector<Colored>& W, const Monomial& scale);
Frac evaluate_frac(const KClass& c, const FormalAlphabet& arg);

}  // namespace kha::detail
