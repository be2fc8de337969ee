#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kha/ratfun.hpp"

namespace kha {

struct Edge {
  std::string src, dst, param;
};

/// Finite quiver with loops and multi-edges. Nodes are kept sorted so that
/// node indices, and hence variable names z_<node>_<a>, are canonical.
class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> nodes, std::vector<Edge> edges);

  static Quiver from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  /// 16 hex digits of FNV-1a over the canonical JSON text.
  std::string hash() const;

  static Quiver a1();
  static Quiver jordan();
  /// 1 -> 2 with parameter t1.
  static Quiver a2();

  std::size_t size() const { return nodes_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t index(const std::string& node) const;
  /// Number of edges i -> j.
  int edge_count(std::size_t i, std::size_t j) const;
  /// Parameter symbols of edges i -> j.
  const std::vector<Symbol>& params(std::size_t i, std::size_t j) const;
  std::vector<Symbol> all_params() const;

  bool operator==(const Quiver& o) const;
  bool operator!=(const Quiver& o) const { return !(*this == o); }

 private:
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::vector<Symbol>>> params_;
};

Symbol q_symbol();

/// I-indexed integer vector (signed entries are allowed for shifts).
struct DimVector {
  std::vector<int> v;

  DimVector() = default;
  explicit DimVector(std::size_t n, int fill = 0) : v(n, fill) {}
  DimVector(std::initializer_list<int> l) : v(l) {}
  static DimVector unit(std::size_t n, std::size_t i);

  std::size_t size() const { return v.size(); }
  int& operator[](std::size_t i) { return v[i]; }
  int operator[](std::size_t i) const { return v[i]; }
  int total() const;
  bool is_zero() const;
  bool nonnegative() const;

  DimVector operator+(const DimVector& o) const;
  DimVector operator-(const DimVector& o) const;
  DimVector operator-() const;
  bool operator==(const DimVector& o) const { return v == o.v; }
  bool operator!=(const DimVector& o) const { return v != o.v; }
  bool operator<(const DimVector& o) const { return v < o.v; }
  /// Componentwise <=.
  bool leq(const DimVector& o) const;

  std::string to_string() const;
};

/// Every k with 0 <= k <= n componentwise, in lexicographic order.
std::vector<DimVector> boxed_below(const DimVector& n);

struct Slope {
  std::vector<Rational> m;
  Slope() = default;
  explicit Slope(std::size_t n, const Rational& fill = 0) : m(n, fill) {}
  /// Comma-separated exact rationals, e.g. "0,1/2".
  static Slope parse(const std::string& text, std::size_t nodes);
  std::string to_string() const;
  std::size_t size() const { return m.size(); }
  const Rational& operator[](std::size_t i) const { return m[i]; }
};

void check_compatible(const Quiver& q, const DimVector& a);
/// <a, b> = sum a_i b_j #_{ij}.
int inner(const Quiver& q, const DimVector& a, const DimVector& b);
int dot(const DimVector& a, const DimVector& b);
Rational dot(const Slope& m, const DimVector& n);

/// 1 - coef * x^power with coef a monomial in q and the t_e.
struct Binomial {
  LaurentPoly coef;
  int power = 1;
  /// The factor evaluated at x = num/den (a ratio of monomials).
  LaurentPoly at(const Monomial& x) const;
};

/// Product of numerator binomials over product of denominator binomials.
struct BinomialRatio {
  std::vector<Binomial> num, den;
  RatFun evaluate(const Monomial& x) const;
};

enum class Kernel { Zeta, ZetaTilde, ZetaTildeDiag };

/// zeta_ij(x) and zeta~_ij(x) as binomial ratios.
BinomialRatio zeta_parts(const Quiver& q, std::size_t i, std::size_t j);
BinomialRatio zeta_tilde_parts(const Quiver& q, std::size_t i, std::size_t j);
/// zeta_ij(x) / (1 - x/q)^{delta_ij}: the self-alphabet kernel.
BinomialRatio zeta_diag_parts(const Quiver& q, std::size_t i, std::size_t j);
BinomialRatio kernel_parts(const Quiver& q, Kernel k, std::size_t i, std::size_t j);

RatFun zeta(const Quiver& q, std::size_t i, std::size_t j, Symbol x);
RatFun zeta_tilde(const Quiver& q, std::size_t i, std::size_t j, Symbol x);
RatFun gamma(const Quiver& q, std::size_t i);

/// A coloured symbol: (node index, symbol).
using Colored = std::pair<std::size_t, Symbol>;

/// Product of kernel_{col z, col x}(z / x) over pairs with distinct symbols.
RatFun zeta_alphabet(const Quiver& q, const std::vector<Colored>& Z,
                     const std::vector<Colored>& X, Kernel kernel);

}  // namespace kha
