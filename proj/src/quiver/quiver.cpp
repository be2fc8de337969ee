#include "kha/quiver.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kha {

Symbol q_symbol() {
  static const Symbol q = intern("q");
  return q;
}

// ------------------------------------------------------------------ Quiver

Quiver::Quiver(std::vector<std::string> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
    throw std::invalid_argument("quiver: duplicate node label");
  std::set<std::string> labels;
  params_.assign(nodes_.size(), std::vector<std::vector<Symbol>>(nodes_.size()));
  q_symbol();
  for (const Edge& e : edges_) {
    if (!labels.insert(e.param).second)
      throw std::invalid_argument("quiver: repeated edge parameter " + e.param);
    if (e.param.empty() || e.param[0] != 't' || e.param.find('_') != std::string::npos)
      throw std::invalid_argument("quiver: edge parameter must look like t<label>: " + e.param);
    params_[index(e.src)][index(e.dst)].push_back(intern(e.param));
  }
}

Quiver Quiver::from_json(const nlohmann::json& j) {
  std::vector<std::string> nodes;
  for (const auto& n : j.at("nodes")) nodes.push_back(n.is_string() ? n.get<std::string>() : n.dump());
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      auto label = [](const nlohmann::json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
      };
      edges.push_back({label(e.at("src")), label(e.at("dst")), e.at("param").get<std::string>()});
    }
  }
  return Quiver(std::move(nodes), std::move(edges));
}

nlohmann::json Quiver::to_json() const {
  nlohmann::json j;
  j["nodes"] = nodes_;
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : edges_) j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"param", e.param}});
  return j;
}

std::string Quiver::hash() const {
  std::string text = to_json().dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Quiver Quiver::a1() { return Quiver({"1"}, {}); }
Quiver Quiver::jordan() { return Quiver({"1"}, {{"1", "1", "t"}}); }
Quiver Quiver::a2() { return Quiver({"1", "2"}, {{"1", "2", "t1"}}); }

std::size_t Quiver::index(const std::string& node) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
  if (it == nodes_.end() || *it != node) throw std::invalid_argument("quiver: unknown node " + node);
  return static_cast<std::size_t>(it - nodes_.begin());
}

int Quiver::edge_count(std::size_t i, std::size_t j) const {
  return static_cast<int>(params_.at(i).at(j).size());
}

const std::vector<Symbol>& Quiver::params(std::size_t i, std::size_t j) const {
  return params_.at(i).at(j);
}

std::vector<Symbol> Quiver::all_params() const {
  std::vector<Symbol> out;
  for (const Edge& e : edges_) out.push_back(intern(e.param));
  return out;
}

bool Quiver::operator==(const Quiver& o) const { return to_json() == o.to_json(); }

// --------------------------------------------------------------- DimVector

DimVector DimVector::unit(std::size_t n, std::size_t i) {
  DimVector d(n);
  d[i] = 1;
  return d;
}

int DimVector::total() const {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

bool DimVector::is_zero() const {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

bool DimVector::nonnegative() const {
  return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
}

DimVector DimVector::operator+(const DimVector& o) const {
  if (o.size() != size()) throw std::invalid_argument("DimVector: size mismatch");
  DimVector r = *this;
  for (std::size_t i = 0; i < v.size(); ++i) r[i] += o[i];
  return r;
}

DimVector DimVector::operator-(const DimVector& o) const { return *this + (-o); }

DimVector DimVector::operator-() const {
  DimVector r = *this;
  for (int& x : r.v) x = -x;
  return r;
}

bool DimVector::leq(const DimVector& o) const {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] > o[i]) return false;
  return true;
}

std::string DimVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::vector<DimVector> boxed_below(const DimVector& n) {
  std::vector<DimVector> out;
  DimVector k(n.size());
  while (true) {
    out.push_back(k);
    std::size_t i = n.size();
    while (true) {
      if (i == 0) return out;
      --i;
      if (k[i] < n[i]) {
        ++k[i];
        break;
      }
      k[i] = 0;
    }
  }
}

Slope Slope::parse(const std::string& text, std::size_t nodes) {
  Slope s;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part.erase(std::remove_if(part.begin(), part.end(), ::isspace), part.end());
    s.m.push_back(parse_rational(part));
  }
  if (s.m.size() != nodes)
    throw std::invalid_argument("slope '" + text + "' must have " + std::to_string(nodes) +
                                " entries");
  return s;
}

std::string Slope::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? "," : "") + kha::to_string(m[i]);
  return out;
}

void check_compatible(const Quiver& q, const DimVector& a) {
  if (a.size() != q.size())
    throw std::invalid_argument("dimension vector " + a.to_string() + " does not match quiver");
}

int inner(const Quiver& q, const DimVector& a, const DimVector& b) {
  check_compatible(q, a);
  check_compatible(q, b);
  int s = 0;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) s += a[i] * b[j] * q.edge_count(i, j);
  return s;
}

int dot(const DimVector& a, const DimVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const Slope& m, const DimVector& n) {
  if (m.size() != n.size()) throw std::invalid_argument("dot: slope size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < n.size(); ++i) s += m[i] * n[i];
  return s;
}

// ------------------------------------------------------------------ kernels

LaurentPoly Binomial::at(const Monomial& x) const {
  return LaurentPoly(1) - coef.mul_monomial(x.pow(power));
}

RatFun BinomialRatio::evaluate(const Monomial& x) const {
  LaurentPoly n(1), d(1);
  for (const auto& b : num) n *= b.at(x);
  for (const auto& b : den) d *= b.at(x);
  return RatFun::normalize(n, d);
}

namespace {

void add_edges(const Quiver& q, std::size_t i, std::size_t j, BinomialRatio& r) {
  for (Symbol t : q.params(i, j)) r.num.push_back({LaurentPoly::var(t), 1});
  for (Symbol t : q.params(j, i))
    r.num.push_back({LaurentPoly(Monomial::from_entries({{q_symbol(), 1}, {t, -1}})), -1});
}

}  // namespace

BinomialRatio zeta_parts(const Quiver& q, std::size_t i, std::size_t j) {
  BinomialRatio r;
  if (i == j) {
    r.num.push_back({LaurentPoly::var(q_symbol(), -1), 1});
    r.den.push_back({LaurentPoly(1), 1});
  }
  add_edges(q, i, j, r);
  return r;
}

BinomialRatio zeta_tilde_parts(const Quiver& q, std::size_t i, std::size_t j) {
  BinomialRatio r;
  if (i == j) {
    r.den.push_back({LaurentPoly(1), 1});
    r.den.push_back({LaurentPoly::var(q_symbol(), -1), -1});
  }
  add_edges(q, i, j, r);
  return r;
}

BinomialRatio zeta_diag_parts(const Quiver& q, std::size_t i, std::size_t j) {
  BinomialRatio r;
  if (i == j) r.den.push_back({LaurentPoly(1), 1});
  add_edges(q, i, j, r);
  return r;
}

BinomialRatio kernel_parts(const Quiver& q, Kernel k, std::size_t i, std::size_t j) {
  switch (k) {
    case Kernel::Zeta:
      return zeta_parts(q, i, j);
    case Kernel::ZetaTilde:
      return zeta_tilde_parts(q, i, j);
    case Kernel::ZetaTildeDiag:
      return zeta_diag_parts(q, i, j);
  }
  throw std::logic_error("unknown kernel");
}

RatFun zeta(const Quiver& q, std::size_t i, std::size_t j, Symbol x) {
  return zeta_parts(q, i, j).evaluate(Monomial::var(x));
}

RatFun zeta_tilde(const Quiver& q, std::size_t i, std::size_t j, Symbol x) {
  return zeta_tilde_parts(q, i, j).evaluate(Monomial::var(x));
}

RatFun gamma(const Quiver& q, std::size_t i) {
  LaurentPoly num(1);
  Symbol qs = q_symbol();
  for (Symbol t : q.params(i, i))
    num *= (LaurentPoly(1) - LaurentPoly::var(t)) *
           (LaurentPoly(1) - LaurentPoly(Monomial::from_entries({{qs, 1}, {t, -1}})));
  return RatFun::normalize(num, LaurentPoly(1) - LaurentPoly::var(qs, -1));
}

RatFun zeta_alphabet(const Quiver& q, const std::vector<Colored>& Z, const std::vector<Colored>& X,
                     Kernel kernel) {
  LaurentPoly num(1), den(1);
  for (const auto& [ci, z] : Z) {
    for (const auto& [cj, x] : X) {
      if (z == x) continue;
      BinomialRatio k = kernel_parts(q, kernel, ci, cj);
      Monomial ratio = Monomial::from_entries({{z, 1}, {x, -1}});
      for (const auto& b : k.num) num *= b.at(ratio);
      for (const auto& b : k.den) den *= b.at(ratio);
    }
  }
  return RatFun::normalize(num, den);
}

}  // namespace kha
