#pragma once

#include <map>
#include <optional>
#include <utility>

#include "kha/hopf.hpp"

namespace kha::detail {

struct LegSymbol {
  bool cartan = false;
  std::size_t leg = 0, node = 0;
  int index = 0;  // variable index, or the Cartan mode p
  bool minus = false;
};

/// Decodes a leg or Cartan symbol; nullopt for parameters.
std::optional<LegSymbol> describe(Symbol s);

/// Coordinates of a tensor element: (key, leg/Cartan monomial) -> coefficient.
using TensorCoords = std::map<std::pair<TensorElement::Key, std::string>, RatFun>;
TensorCoords coordinates(const TensorElement& t);

/// Delta_m without the membership test; linear in F.
TensorElement slope_coproduct_raw(const ShuffleElement& F, const Slope& m);

/// Variables of leg `leg` for hdeg n, colour by colour.
std::vector<std::vector<Symbol>> leg_vars(const Quiver& q, const DimVector& n, std::size_t leg);

}  // namespace kha::detail

namespace kha::detail {

/// prod gamma * CT[z^d num / prod zeta] over the word's region, with the
/// a-th letter bound to the next unused variable of its colour in `vars`.
/// fword: |z1| << ... << |zn| and zeta_{i_a i_b}(z_a/z_b); otherwise the
/// reversed region and zeta_{i_b i_a}(z_b/z_a).
RatFun word_integral(const Quiver& q, const Word& w, const LaurentPoly& num,
                     const std::vector<std::vector<Symbol>>& vars, bool fword);

}  // namespace kha::detail
