#pragma once

#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "kha/quiver.hpp"
#include "kha/ratfun.hpp"

namespace kha {

enum class Side { Positive, Negative };

using QuiverPtr = std::shared_ptr<const Quiver>;

/// The variables z_{i,a} of a fixed horizontal degree, named z_<node>_<a>
/// with a starting at 1.
class VarTable {
 public:
  VarTable(const Quiver& q, const DimVector& n);

  const std::vector<Symbol>& color(std::size_t i) const { return z_[i]; }
  Symbol at(std::size_t i, std::size_t a) const { return z_[i][a]; }
  std::size_t colors() const { return z_.size(); }
  bool is_z(Symbol s) const { return set_.count(s) > 0; }
  /// Sum of the z exponents of m.
  int zdegree(const Monomial& m) const;
  /// Splits m into (z part, remaining part).
  std::pair<Monomial, Monomial> split(const Monomial& m) const;

 private:
  std::vector<std::vector<Symbol>> z_;
  std::unordered_set<Symbol> set_;
};

Symbol z_symbol(const Quiver& q, std::size_t i, std::size_t a);

/// A colour-symmetric Laurent polynomial in z_{i,a} with coefficients in
/// Q(q, t_e), stored as num / den with den free of z.
class ShuffleElement {
 public:
  ShuffleElement() = default;
  ShuffleElement(QuiverPtr q, DimVector hdeg, LaurentPoly num, LaurentPoly den = LaurentPoly(1),
                 Side side = Side::Positive);
  /// The unit with coefficient c.
  static ShuffleElement constant(QuiverPtr q, const RatFun& c, Side side = Side::Positive);
  /// z_{i,1}^d in hdeg e_i.
  static ShuffleElement generator(QuiverPtr q, std::size_t i, int d, Side side = Side::Positive);

  const Quiver& quiver() const { return *q_; }
  const QuiverPtr& quiver_ptr() const { return q_; }
  const DimVector& hdeg() const { return n_; }
  Side side() const { return side_; }
  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  VarTable vars() const { return VarTable(*q_, n_); }

  /// Vertical degree; throws if the element is not homogeneous.
  int vdeg() const;
  bool is_homogeneous() const;
  /// Checks invariance under every adjacent same-colour transposition.
  bool is_symmetric() const;

  ShuffleElement operator+(const ShuffleElement& o) const;
  ShuffleElement operator-(const ShuffleElement& o) const;
  ShuffleElement operator-() const;
  ShuffleElement operator*(const RatFun& c) const;
  /// Exact equality (cross-multiplied).
  bool operator==(const ShuffleElement& o) const;
  bool operator!=(const ShuffleElement& o) const { return !(*this == o); }

  /// Coefficients grouped by z monomial, each a reduced RatFun in q and t.
  std::vector<std::pair<Monomial, RatFun>> terms() const;
  /// Same element with a flipped side flag.
  ShuffleElement with_side(Side s) const;

  nlohmann::json to_json() const;
  static ShuffleElement from_json(const nlohmann::json& j);
  std::string to_string() const;

 private:
  void reduce();

  QuiverPtr q_;
  DimVector n_;
  LaurentPoly num_, den_{1};
  Side side_ = Side::Positive;
};

std::string to_string(Side s);
Side parse_side(const std::string& s);

/// Sum of sigma(f) over the product of same-colour symmetric groups. Throws
/// std::domain_error if the result still has a z-denominator.
ShuffleElement symmetrize(QuiverPtr q, const RatFun& f, const DimVector& hdeg,
                          Side side = Side::Positive);
/// Same, for num / prod(den_factors); no gcd is taken until the end.
ShuffleElement symmetrize(QuiverPtr q, const LaurentPoly& num,
                          const std::vector<LaurentPoly>& den_factors, const DimVector& hdeg,
                          Side side = Side::Positive);

/// The shuffle product. On the negative side F * G is computed as the
/// positive product G * F.
ShuffleElement shuffle_product(const ShuffleElement& F, const ShuffleElement& G);
/// The same product by full symmetrization of F G prod zeta over rational
/// functions; slow, used as an oracle.
ShuffleElement shuffle_product_generic(const ShuffleElement& F, const ShuffleElement& G);

/// Companion specialisation for the wheel conditions.
enum class Companion { Off, TwoVariable, Chained };

struct WheelOptions {
  bool chained = true;
  Companion companion = Companion::Chained;
};

/// One specialisation z -> c * monomial applied in a wheel test.
using Specialization = std::map<Symbol, std::pair<Rational, Monomial>>;
std::vector<Specialization> wheel_specializations(const Quiver& q, const DimVector& n,
                                                  const WheelOptions& opt = {});
bool wheel_check(const ShuffleElement& F, const WheelOptions& opt = {});

/// Multiplies every z_{i,a} by z_{i,a}^{k_i} (z^{-k_i} on the negative side).
ShuffleElement shift(const ShuffleElement& F, const DimVector& k);

/// Extremal xi-degree when the first k_i variables of each colour are scaled
/// by xi: the maximum (at infinity) or the minimum (at zero).
long scaled_degree(const ShuffleElement& F, const DimVector& k, bool maximum);
bool slope_leq(const ShuffleElement& F, const Slope& m);
bool slope_geq(const ShuffleElement& F, const Slope& m);
/// slope_leq on the positive side, slope_geq on the negative side.
bool slope_test(const ShuffleElement& F, const Slope& m);
/// vdeg = m.hdeg (positive) or vdeg = -m.hdeg (negative). Throws when F is
/// not homogeneous.
bool naive_slope_eq(const ShuffleElement& F, const Slope& m);

struct GradedPiece {
  DimVector hdeg;
  int vdeg = 0;
  std::vector<ShuffleElement> basis;
};

/// Orbit of a colour-wise sorted exponent vector, listed colour by colour.
using Orbit = std::vector<std::vector<int>>;
ShuffleElement orbit_sum(QuiverPtr q, const DimVector& n, const Orbit& orbit, Side side);
/// Candidate orbits for B_{m|n} passing the slope test, in canonical order.
std::vector<Orbit> slope_orbits(const Quiver& q, const Slope& m, const DimVector& n, Side side);

/// Reduced echelon basis of the slope subalgebra piece in hdeg n (or -n on
/// the negative side). `permutation`, when nonempty, reorders the enumerated
/// orbits before solving; the result is canonical regardless.
GradedPiece slope_basis(QuiverPtr q, const Slope& m, const DimVector& n,
                        Side side = Side::Positive, const WheelOptions& opt = {},
                        const std::vector<std::size_t>& permutation = {});

/// Coefficient form of e_i(z) e_j(w) zeta_ji(w/z) = e_j(w) e_i(z) zeta_ij(z/w)
/// at z^{-a'} w^{-b'} for |a'-a|, |b'-b| <= window.
bool quadratic_relation_check(QuiverPtr q, std::size_t i, std::size_t j, int a, int b,
                              int window = 0);

}  // namespace kha
