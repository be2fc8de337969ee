#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kha/rational.hpp"
#include "kha/symbol.hpp"

namespace kha {

/// Laurent monomial: sorted (symbol, nonzero exponent) pairs.
class Monomial {
 public:
  using Entry = std::pair<Symbol, int>;

  Monomial() = default;
  static Monomial var(Symbol s, int e = 1);
  static Monomial from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return e_; }
  bool is_one() const { return e_.empty(); }
  int exponent(Symbol s) const;
  long degree() const;

  Monomial operator*(const Monomial& o) const;
  Monomial inverse() const;
  Monomial pow(int n) const;
  /// Drops symbol s.
  Monomial without(Symbol s) const;
  /// Exponentwise minimum; used for monomial contents.
  Monomial gcd(const Monomial& o) const;
  /// True when every exponent is >= the corresponding exponent of o.
  bool divisible_by(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return e_ != o.e_; }

  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::vector<Entry> e_;
};

/// Graded lexicographic comparison: total degree first, then exponents in
/// symbol order. Returns -1, 0 or 1.
int compare(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Sparse multivariate Laurent polynomial over Q. Terms are kept sorted in
/// decreasing graded-lex order with no zero coefficients.
class LaurentPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT(runtime/explicit)
  LaurentPoly(const Rational& c);  // NOLINT(runtime/explicit)
  LaurentPoly(const Monomial& m, const Rational& c = 1);
  static LaurentPoly var(Symbol s, int e = 1);
  /// Builds from arbitrary terms; combines duplicates, drops zeros, sorts.
  static LaurentPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return t_.size() == 1; }
  Rational constant_value() const;
  const Term& leading() const { return t_.front(); }

  std::set<Symbol> variables() const;
  bool contains(Symbol s) const;
  int max_exp(Symbol s) const;
  int min_exp(Symbol s) const;
  /// Coefficient of s^k, as a polynomial free of s.
  LaurentPoly coeff(Symbol s, int k) const;
  std::map<int, LaurentPoly> coefficients(Symbol s) const;
  /// Coefficient of the monomial m (exact match).
  Rational coeff(const Monomial& m) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }

  LaurentPoly mul_monomial(const Monomial& m) const;
  LaurentPoly pow(unsigned n) const;

  /// Keeps only terms whose s-exponent is <= bound.
  LaurentPoly truncate_above(Symbol s, int bound) const;
  LaurentPoly filter(const std::function<bool(const Monomial&)>& keep) const;

  /// Replaces s by the Laurent polynomial v.
  LaurentPoly substitute(Symbol s, const LaurentPoly& v) const;
  /// Simultaneous replacement of symbols by coefficient * monomial.
  LaurentPoly substitute_monomials(
      const std::map<Symbol, std::pair<Rational, Monomial>>& sub) const;
  /// Simultaneous renaming of symbols (a permutation or injection).
  LaurentPoly rename(const std::map<Symbol, Symbol>& ren) const;

  /// Exponentwise minimum over all terms (the largest monomial factor).
  Monomial monomial_content() const;
  /// gcd of numerators over lcm of denominators, sign of the leading term.
  Rational rational_content() const;
  /// Strips monomial and rational content: integer coefficients with gcd 1,
  /// positive leading coefficient, no monomial factor.
  LaurentPoly unit_normal() const;

  bool operator==(const LaurentPoly& o) const { return t_ == o.t_; }
  bool operator!=(const LaurentPoly& o) const { return t_ != o.t_; }
  /// Arbitrary but fixed total order, for use as a map key.
  bool operator<(const LaurentPoly& o) const;

  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::vector<Term> t_;
};

LaurentPoly pow_var(Symbol s, int e);

/// Exact quotient a/b in the Laurent ring, or nullopt if b does not divide a.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b);

/// Greatest common divisor in Q[x^{±1}], returned in unit normal form.
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Exact division by the linear binomial (x - y). Throws if not exact.
LaurentPoly divide_by_difference(const LaurentPoly& p, Symbol x, Symbol y);

}  // namespace kha
