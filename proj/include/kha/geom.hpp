#pragma once

#include <set>
#include <string>
#include <vector>

#include "kha/quiver.hpp"

namespace kha {

/// Chern roots x<tag>_<node>_<a> and framing roots w<tag>_<node>_<a>, a >= 1.
struct Alphabet {
  DimVector v, w;
  std::vector<std::vector<Symbol>> x, framing;

  static Alphabet declare(const Quiver& q, const DimVector& v, const DimVector& w,
                          const std::string& tag = "");
  std::vector<Colored> roots() const;
  std::vector<Colored> framing_roots() const;
};

/// A signed combination of coloured symbols, e.g. X + z - z.
class FormalAlphabet {
 public:
  struct Entry {
    Colored root;
    int sign;
  };

  FormalAlphabet() = default;
  explicit FormalAlphabet(const std::vector<Colored>& roots);

  /// Makes `s` usable as a singleton.
  FormalAlphabet& declare(Symbol s);
  FormalAlphabet& plus(const Colored& c);
  FormalAlphabet& minus(const Colored& c);

  const std::vector<Entry>& entries() const { return entries_; }
  const std::set<Symbol>& declared() const { return declared_; }

 private:
  FormalAlphabet& push(const Colored& c, int sign);
  std::vector<Entry> entries_;
  std::set<Symbol> declared_;
};

/// prod p_d(X_node) over (node, d).
using PowerSumWord = std::vector<std::pair<std::size_t, int>>;

/// Polynomial in power sums with rational-function coefficients.
struct KClass {
  std::vector<std::pair<PowerSumWord, RatFun>> terms;

  static KClass one();
  static KClass word(const PowerSumWord& w);
  /// "1", or factors p<d>[<node>] joined by '*', e.g. "p1[1]*p2[1]".
  static KClass parse(const Quiver& q, const std::string& text);
  std::string to_string(const Quiver& q) const;

  RatFun evaluate(const FormalAlphabet& arg) const;
};

RatFun plethystic_eval(const PowerSumWord& p, const FormalAlphabet& arg);

/// wedge^*(sum m_k - sum m'_l) = prod (1 - m_k) / prod (1 - m'_l); each entry is (m, multiplicity).
RatFun wedge_star(const std::vector<std::pair<Monomial, int>>& arg);
/// wedge^*(scale A / W), pairing only equal colours.
RatFun wedge_star(const FormalAlphabet& A, const std::vector<Colored>& W, const Monomial& scale);
/// zeta~(A / B) over pairs of distinct symbols, with multiplicities.
RatFun zeta_tilde(const Quiver& q, const FormalAlphabet& A, const FormalAlphabet& B);

/// q^(1/2), used for the Cartan prefactor of the stable envelope.
Symbol sqrt_q_symbol();

/// (w''.v' - <v'', v'>): the exponent of q^(1/2) in the prefactor.
int stab_prefactor_exponent(const Quiver& q, const DimVector& v1, const DimVector& w1,
                            const DimVector& v2, const DimVector& w2);

/// The restriction of Stab_infty to a fixed component:
/// zeta~(X'/X'') prod_i wedge^*(q X'_i / W''_i) wedge^*(X''_i / W'_i).
RatFun stab_infty_class(const Quiver& q, const FormalAlphabet& X1, const std::vector<Colored>& W1,
                        const FormalAlphabet& X2, const std::vector<Colored>& W2,
                        bool prefactor = false);
RatFun stab_infty_class(const Quiver& q, const Alphabet& first, const Alphabet& second,
                        bool prefactor = false);

/// Every way to split `roots` into colour blocks of sizes `first` and the rest.
std::vector<std::pair<std::vector<Colored>, std::vector<Colored>>> splits(
    const std::vector<Colored>& roots, const DimVector& first);

/// Stab_infty(p1 (x) p2): the sum over splits of the roots into sizes v1, v2.
RatFun stab_infty(const Quiver& q, const std::vector<Colored>& roots, const DimVector& v1,
                  const std::vector<Colored>& W1, const std::vector<Colored>& W2, const KClass& p1,
                  const KClass& p2, bool prefactor = false);

/// Which alphabet zeta~(z / X_{v+e_i}) runs over.
enum class NewRoot { Included, Excluded };
/// Power of wedge^*(z/W) in the f action.
enum class FWedge { Literal, Inverse };

/// zeta~(z / X_{v+e_i}) wedge^*(zq / W_i) c(X_{v+e_i} - z), with X_{v+e_i} = X + z.
RatFun act_e(const Quiver& q, std::size_t i, Symbol z, const std::vector<Colored>& X,
             const std::vector<Colored>& W, const KClass& c, NewRoot reading = NewRoot::Included);
/// The same prefactor applied to an already evaluated class on X.
RatFun act_e(const Quiver& q, std::size_t i, Symbol z, const std::vector<Colored>& X,
             const std::vector<Colored>& W, const RatFun& c, NewRoot reading = NewRoot::Included);

/// zeta~(z/X) / zeta~(X/z) * wedge^*(zq/W_i) / wedge^*(z/W_i) * c. Both signs give the
/// same rational function; they differ only in the direction of expansion.
RatFun act_h(const Quiver& q, std::size_t i, bool minus, Symbol z, const std::vector<Colored>& X,
             const std::vector<Colored>& W, const RatFun& c);
RatFun cartan_ratio(const Quiver& q, std::size_t i, Symbol z, const std::vector<Colored>& X,
                    const std::vector<Colored>& W);

/// zeta~(X_{v-e_i} / z)^{-1} wedge^*(z / W_i)^{+-1} c(X_{v-e_i} + z), X the remaining roots.
RatFun act_f(const Quiver& q, std::size_t i, Symbol z, const std::vector<Colored>& X,
             const std::vector<Colored>& W, const KClass& c, FWedge wedge = FWedge::Literal);

struct IntertwineOptions {
  NewRoot reading = NewRoot::Included;
  bool include_f = false;
  FWedge f_wedge = FWedge::Literal;
  /// Also compute e_composed_ratio.
  bool composed = false;
};

struct IntertwineReport {
  bool e = false, h = false;
  bool f_ran = false, f = false;
  RatFun e_difference, h_difference, f_difference;
  /// RHS of the e check divided by e(z) applied to the summed Stab class.
  RatFun e_composed_ratio;
  bool ok() const { return e && h && (!f_ran || f); }
};

IntertwineReport intertwine_check(const Quiver& q, std::size_t i, const DimVector& v1,
                                  const DimVector& v2, const DimVector& w1, const DimVector& w2,
                                  const KClass& p1, const KClass& p2,
                                  const IntertwineOptions& opt = {});

}  // namespace kha
