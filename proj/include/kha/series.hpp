#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "kha/ratfun.hpp"

namespace kha {

enum class Point { Zero, Infinity };
enum class Region { Increasing, Decreasing };

/// Truncated one-sided Laurent expansion. With w = var at Zero and
/// w = 1/var at Infinity, the series is
///   sum_k coefficients[k] * w^(valuation + k),   valuation + k < order.
struct LaurentSeries {
  Symbol var = 0;
  Point point = Point::Zero;
  int valuation = 0;
  int order = 0;
  std::vector<RatFun> coefficients;

  bool is_zero() const { return coefficients.empty(); }
  /// Exponent of var carried by coefficients[k].
  int exponent(std::size_t k) const;
  /// The truncated sum as a rational function.
  RatFun sum() const;
};

LaurentSeries series_expand(const RatFun& f, Symbol var, Point point, int order);

/// A numerator over a product of canonical polynomial factors. Used by the
/// residue engine so that no gcd is taken until the final conversion.
class FactoredRat {
 public:
  FactoredRat() = default;
  explicit FactoredRat(LaurentPoly num) : num_(std::move(num)) {}
  static FactoredRat from(const RatFun& f);

  /// Divides by f^e (e > 0) or multiplies by f^{-e} (e < 0 only allowed when
  /// f is a monomial).
  void divide_by(const LaurentPoly& f, int e = 1);
  void multiply(const LaurentPoly& p) { num_ *= p; }

  const LaurentPoly& num() const { return num_; }
  const std::map<LaurentPoly, int>& factors() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFun to_ratfun() const;

  /// z^0 coefficient of the expansion in `var` at 0 (other symbols generic).
  FactoredRat constant_term(Symbol var) const;

 private:
  LaurentPoly num_;
  std::map<LaurentPoly, int> den_;
};

/// Iterated constant term. Region::Increasing means |v0| << |v1| << ...,
/// so v0 is expanded first; Region::Decreasing expands the last one first.
RatFun constant_term_iterated(const RatFun& f, const std::vector<Symbol>& vars, Region region);
FactoredRat constant_term_iterated(FactoredRat f, const std::vector<Symbol>& vars,
                                   Region region);

/// Extended integers for xi_degree: the zero function has degree
/// kNegInfinity at infinity and kPosInfinity at zero.
constexpr long kNegInfinity = std::numeric_limits<long>::min();
constexpr long kPosInfinity = std::numeric_limits<long>::max();

long xi_degree(const RatFun& f, Symbol xi, Point at);
/// lim f / xi^shift at the given point. Throws std::domain_error when the
/// limit diverges.
RatFun limit_leading(const RatFun& f, Symbol xi, int shift, Point at);

/// Cap on terms held by the residue engine; read from KHA_RESIDUE_MAX_TERMS
/// (default 20 million).
std::size_t residue_term_cap();

}  // namespace kha
