#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kha/linalg.hpp"
#include "kha/shuffle.hpp"

namespace kha {

/// z_{i,a} on tensor leg `leg` (both 0-based), named z_<node>_<a+1>@<leg+1>.
Symbol leg_symbol(const Quiver& q, std::size_t i, std::size_t a, std::size_t leg);
/// Cartan generator h_{i,p} (plus) or h_{i,-p} (minus) on a tensor leg.
Symbol cartan_symbol(const Quiver& q, std::size_t i, int p, bool minus, std::size_t leg);

/// A Cartan generator as it appears in a tensor leg.
struct CartanFactor {
  std::size_t node = 0;
  int p = 0;
  bool minus = false;
  int power = 1;
};

/// A finite sum of tensors of shuffle elements with Cartan decorations. Each
/// component with fixed leg degrees is stored as one polynomial in the leg
/// variables z_<node>_<a>@<leg> and the Cartan symbols, over a denominator
/// free of z. A truncation order of nullopt means the element is exact.
class TensorElement {
 public:
  TensorElement() = default;
  TensorElement(QuiverPtr q, std::vector<Side> sides, std::optional<int> order = std::nullopt);

  /// legs[0] (x) legs[1] (x) ..., each leg decorated by a product of Cartan factors.
  static TensorElement pure(const std::vector<ShuffleElement>& legs,
                            const std::vector<std::vector<CartanFactor>>& cartan = {});

  const Quiver& quiver() const { return *q_; }
  const QuiverPtr& quiver_ptr() const { return q_; }
  std::size_t arity() const { return sides_.size(); }
  const std::vector<Side>& sides() const { return sides_; }
  std::optional<int> order() const { return order_; }
  bool exact() const { return !order_; }
  bool is_zero() const { return parts_.empty(); }

  struct Part {
    LaurentPoly num;
    LaurentPoly den{1};
  };
  using Key = std::vector<DimVector>;
  const std::map<Key, Part>& parts() const { return parts_; }

  /// Adds num/den to the component with leg degrees `key`.
  void add(const Key& key, const LaurentPoly& num, const LaurentPoly& den = LaurentPoly(1));

  TensorElement operator+(const TensorElement& o) const;
  TensorElement operator-(const TensorElement& o) const;
  TensorElement operator*(const RatFun& c) const;
  bool operator==(const TensorElement& o) const;
  bool operator!=(const TensorElement& o) const { return !(*this == o); }

  /// Keeps the components and terms accepted by `keep`.
  TensorElement filter(const std::function<bool(const Key&, const Monomial&)>& keep) const;

  /// Replaces leg `leg` by f(leg element), where f returns a tensor of
  /// arity r with exact or truncated output; Cartan factors on that leg are
  /// treated as group-like and copied to every new leg.
  TensorElement apply_to_leg(std::size_t leg,
                             const std::function<TensorElement(const ShuffleElement&)>& f) const;

  /// The pure summands: per leg a Cartan decoration and a shuffle element.
  struct Summand {
    std::vector<std::vector<CartanFactor>> cartan;
    std::vector<ShuffleElement> legs;
  };
  /// Decomposes along the orbits of every leg but the last.
  std::vector<Summand> summands() const;

  nlohmann::json to_json() const;
  static TensorElement from_json(const nlohmann::json& j);
  std::string to_string() const;

 private:
  QuiverPtr q_;
  std::vector<Side> sides_;
  std::optional<int> order_;
  std::map<Key, Part> parts_;
};

/// Drinfeld coproduct with the kernel expanded for small left variables,
/// keeping expansion terms (kernel and Cartan modes) of offset <= order.
TensorElement coproduct_full(const ShuffleElement& F, int order);
/// The slope coproduct; throws std::invalid_argument naming the failed test
/// when F is not in B_m.
TensorElement coproduct_slope(const ShuffleElement& F, const Slope& m);
/// The component of a full coproduct whose legs have naive slope m and whose
/// Cartan part is h_{+-0} only.
TensorElement leading_part(const TensorElement& full, const Slope& m);
/// Applies the counit to the Cartan factors: h_{i,+-0} -> 1, other modes -> 0.
TensorElement cartan_counit(const TensorElement& T);

/// Cartan current h_i^{+-}(z) = q^{e/2} (c_0 + c_1 z^{-+1} + ...).
struct CartanSeries {
  Rational q_exponent;  // e/2
  std::vector<RatFun> coefficients;
};
/// Formal symbols h_{i,+-p}, p = 0..order.
std::vector<CartanFactor> cartan_current_formal(std::size_t i, bool minus, int order);
/// The exponential display in the symbols a_<node>_<d>, b_<node>_<d> (d signed).
CartanSeries cartan_current(const Quiver& q, std::size_t i, bool minus, int order,
                            const DimVector& v, const DimVector& w);
/// Substitution a_{i,d} -> (1 - q^{-d}) p_d(X_i), b_{i,d} -> (1 - q^{-d}) p_d(W_i).
RatFun evaluate_cartan_symbols(const Quiver& q, const RatFun& f,
                               const std::vector<std::vector<Symbol>>& X,
                               const std::vector<std::vector<Symbol>>& W, int max_d);

/// A word e_{i1,d1} * ... * e_{in,dn} (or f) as (node, degree) pairs.
using Word = std::vector<std::pair<std::size_t, int>>;
ShuffleElement word_element(QuiverPtr q, const Word& w, Side side);
/// <F, f-word>: constant term over |z1| << ... << |zn|.
RatFun pair_with_fword(const ShuffleElement& F, const Word& w);
/// <e-word, G>: constant term over |z1| >> ... >> |zn|.
RatFun pair_with_eword(const Word& w, const ShuffleElement& G);
/// Writes F as a combination of words of its own side; throws if none of the
/// searched words span it.
std::vector<std::pair<Word, RatFun>> word_expansion(const ShuffleElement& F, int widen = 3);

/// <F, G> for F positive and G negative, via the f-word expansion of G.
RatFun pair(const ShuffleElement& F, const ShuffleElement& G);
/// The same value via the e-word expansion of F.
RatFun pair_by_ewords(const ShuffleElement& F, const ShuffleElement& G);
/// <h_i^+(z), h_j^-(w)> expanded in w/z to the given order.
std::vector<RatFun> cartan_pairing(const Quiver& q, std::size_t i, std::size_t j, int order);

struct PairingTable {
  Slope slope;
  DimVector hdeg;
  std::vector<ShuffleElement> positive, negative;
  Matrix gram;
  /// dual[a] pairs to delta with positive[b].
  std::vector<ShuffleElement> dual;
};
/// Gram matrix of B+_{m|n} x B-_{m|-n} and the dual of the positive basis.
PairingTable gram_and_dual(QuiverPtr q, const Slope& m, const DimVector& n,
                           const WheelOptions& opt = {});
PairingTable gram_and_dual(const std::vector<ShuffleElement>& positive,
                           const std::vector<ShuffleElement>& negative, const Slope& m);

/// Reduced R-matrix sum_n sum_a E_a (x) F^a over 0 <= n <= cutoff.
TensorElement rmatrix(QuiverPtr q, const Slope& m, const DimVector& cutoff,
                      const WheelOptions& opt = {});
TensorElement rmatrix(const std::vector<PairingTable>& tables);
/// Text of the symbolic Cartan prefactor of R.
std::string rmatrix_cartan_prefactor(const Quiver& q);

bool primitive_check(const ShuffleElement& F, const Slope& m);
/// Basis of the primitive elements of B_{m|n}.
std::vector<ShuffleElement> primitives(QuiverPtr q, const Slope& m, const DimVector& n,
                                       Side side = Side::Positive, const WheelOptions& opt = {});
bool primitives_generate(QuiverPtr q, const Slope& m, const DimVector& cutoff,
                         const WheelOptions& opt = {});

/// (Delta_m (x) id) Delta_m(F) = (id (x) Delta_m) Delta_m(F).
bool coassoc_check(const ShuffleElement& F, const Slope& m);

/// Scalar twist of the R-matrix identities: product over pairs of variables of
/// c_{ij} = <h_{i,0}, h_{j,-0}>, first leg colour i, second leg colour j.
RatFun cartan_twist(const Quiver& q, const DimVector& first, const DimVector& second);

struct QuasiTriangularReport {
  bool left = false;   // (Delta_m (x) id) R = R13 R23
  bool right = false;  // (id (x) Delta_m) R = R13 R12
  bool ok() const { return left && right; }
};
QuasiTriangularReport quasi_triangularity_check(QuiverPtr q, const Slope& m,
                                                const DimVector& cutoff,
                                                const WheelOptions& opt = {});

/// <F * G, H> = <G (x) F, Delta(H)> with Delta truncated to `order`; throws
/// std::invalid_argument when the order cannot reach the needed degrees.
bool bialgebra_check(const ShuffleElement& F, const ShuffleElement& G, const ShuffleElement& H,
                     int order);

}  // namespace kha
