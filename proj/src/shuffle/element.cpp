#include <algorithm>
#include <map>
#include <stdexcept>

#include "kha/parse.hpp"
#include "kha/shuffle.hpp"

namespace kha {

Symbol z_symbol(const Quiver& q, std::size_t i, std::size_t a) {
  return intern("z_" + q.nodes().at(i) + "_" + std::to_string(a + 1));
}

VarTable::VarTable(const Quiver& q, const DimVector& n) : z_(q.size()) {
  check_compatible(q, n);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (int a = 0; a < n[i]; ++a) {
      z_[i].push_back(z_symbol(q, i, a));
      set_.insert(z_[i].back());
    }
}

int VarTable::zdegree(const Monomial& m) const {
  int d = 0;
  for (const auto& [s, e] : m.entries())
    if (is_z(s)) d += e;
  return d;
}

std::pair<Monomial, Monomial> VarTable::split(const Monomial& m) const {
  std::vector<Monomial::Entry> z, rest;
  for (const auto& en : m.entries()) (is_z(en.first) ? z : rest).push_back(en);
  return {Monomial::from_entries(std::move(z)), Monomial::from_entries(std::move(rest))};
}

std::string to_string(Side s) { return s == Side::Positive ? "positive" : "negative"; }

Side parse_side(const std::string& s) {
  if (s == "positive") return Side::Positive;
  if (s == "negative") return Side::Negative;
  throw std::invalid_argument("side must be positive or negative, got " + s);
}

// ---------------------------------------------------------------- element

ShuffleElement::ShuffleElement(QuiverPtr q, DimVector hdeg, LaurentPoly num, LaurentPoly den,
                               Side side)
    : q_(std::move(q)), n_(std::move(hdeg)), num_(std::move(num)), den_(std::move(den)),
      side_(side) {
  if (!q_) throw std::invalid_argument("shuffle element without a quiver");
  check_compatible(*q_, n_);
  if (!n_.nonnegative()) throw std::invalid_argument("negative horizontal degree");
  if (den_.is_zero()) throw std::domain_error("shuffle element with zero denominator");
  reduce();
}

ShuffleElement ShuffleElement::constant(QuiverPtr q, const RatFun& c, Side side) {
  DimVector zero(q->size());
  return ShuffleElement(std::move(q), zero, c.num(), c.den(), side);
}

ShuffleElement ShuffleElement::generator(QuiverPtr q, std::size_t i, int d, Side side) {
  DimVector n = DimVector::unit(q->size(), i);
  LaurentPoly z = LaurentPoly::var(z_symbol(*q, i, 0), d);
  return ShuffleElement(std::move(q), n, z, LaurentPoly(1), side);
}

namespace {

// Groups the terms of p by their z part.
std::vector<std::pair<Monomial, LaurentPoly>> group_by_z(const LaurentPoly& p, const VarTable& vt) {
  std::unordered_map<Monomial, std::vector<LaurentPoly::Term>, MonomialHash> groups;
  std::vector<Monomial> order;
  for (const auto& [m, c] : p.terms()) {
    auto [z, rest] = vt.split(m);
    auto it = groups.find(z);
    if (it == groups.end()) {
      order.push_back(z);
      it = groups.emplace(z, std::vector<LaurentPoly::Term>{}).first;
    }
    it->second.emplace_back(rest, c);
  }
  std::vector<std::pair<Monomial, LaurentPoly>> out;
  for (const Monomial& z : order) out.emplace_back(z, LaurentPoly::from_terms(groups[z]));
  return out;
}

// Canonical exponent vector of a z monomial (colour-major, then index).
std::vector<int> exponent_vector(const Monomial& z, const VarTable& vt) {
  std::vector<int> v;
  for (std::size_t i = 0; i < vt.colors(); ++i)
    for (Symbol s : vt.color(i)) v.push_back(z.exponent(s));
  return v;
}

bool canonical_before(const std::vector<int>& a, const std::vector<int>& b) {
  long da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da > db;
  return a > b;
}

}  // namespace

void ShuffleElement::reduce() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  if (den_.is_constant()) {
    if (den_.constant_value() != 1) {
      num_ *= Rational(1) / den_.constant_value();
      den_ = LaurentPoly(1);
    }
    return;
  }
  LaurentPoly u = den_.unit_normal();
  if (u != den_) {
    LaurentPoly unit = *divide_exact(den_, u);
    num_ = *divide_exact(num_, unit);
    den_ = u;
  }
  VarTable vt(*q_, n_);
  LaurentPoly g = den_;
  for (const auto& [z, c] : group_by_z(num_, vt)) {
    g = gcd(g, c);
    if (g.is_constant()) return;
  }
  num_ = *divide_exact(num_, g);
  den_ = *divide_exact(den_, g);
  if (den_.is_constant()) reduce();
}

int ShuffleElement::vdeg() const {
  if (num_.is_zero()) return 0;
  VarTable vt(*q_, n_);
  int d = vt.zdegree(num_.terms().front().first);
  for (const auto& [m, c] : num_.terms())
    if (vt.zdegree(m) != d) throw std::invalid_argument("element is not homogeneous in vdeg");
  return d;
}

bool ShuffleElement::is_homogeneous() const {
  try {
    vdeg();
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

bool ShuffleElement::is_symmetric() const {
  VarTable vt(*q_, n_);
  for (std::size_t i = 0; i < vt.colors(); ++i)
    for (std::size_t a = 0; a + 1 < vt.color(i).size(); ++a) {
      Symbol x = vt.at(i, a), y = vt.at(i, a + 1);
      if (num_.rename({{x, y}, {y, x}}) != num_) return false;
    }
  return true;
}

namespace {

void check_same_space(const ShuffleElement& a, const ShuffleElement& b) {
  if (a.quiver_ptr() != b.quiver_ptr() && a.quiver() != b.quiver())
    throw std::invalid_argument("shuffle elements over different quivers");
  if (a.side() != b.side()) throw std::invalid_argument("shuffle elements on different sides");
}

}  // namespace

ShuffleElement ShuffleElement::operator+(const ShuffleElement& o) const {
  check_same_space(*this, o);
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (n_ != o.n_) throw std::invalid_argument("adding shuffle elements of different hdeg");
  if (den_ == o.den_) return ShuffleElement(q_, n_, num_ + o.num_, den_, side_);
  return ShuffleElement(q_, n_, num_ * o.den_ + o.num_ * den_, den_ * o.den_, side_);
}

ShuffleElement ShuffleElement::operator-() const {
  ShuffleElement r = *this;
  r.num_ = -num_;
  return r;
}

ShuffleElement ShuffleElement::operator-(const ShuffleElement& o) const { return *this + (-o); }

ShuffleElement ShuffleElement::operator*(const RatFun& c) const {
  return ShuffleElement(q_, n_, num_ * c.num(), den_ * c.den(), side_);
}

bool ShuffleElement::operator==(const ShuffleElement& o) const {
  if (side_ != o.side_ || *q_ != *o.q_) return false;
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  return n_ == o.n_ && num_ * o.den_ == o.num_ * den_;
}

ShuffleElement ShuffleElement::with_side(Side s) const {
  ShuffleElement r = *this;
  r.side_ = s;
  return r;
}

std::vector<std::pair<Monomial, RatFun>> ShuffleElement::terms() const {
  VarTable vt(*q_, n_);
  auto groups = group_by_z(num_, vt);
  std::vector<std::pair<std::vector<int>, std::size_t>> keys;
  for (std::size_t k = 0; k < groups.size(); ++k)
    keys.emplace_back(exponent_vector(groups[k].first, vt), k);
  std::sort(keys.begin(), keys.end(),
            [](const auto& a, const auto& b) { return canonical_before(a.first, b.first); });
  std::vector<std::pair<Monomial, RatFun>> out;
  for (const auto& [v, k] : keys)
    out.emplace_back(groups[k].first, RatFun::normalize(groups[k].second, den_));
  return out;
}

nlohmann::json ShuffleElement::to_json() const {
  nlohmann::json j;
  j["quiver"] = q_->to_json();
  j["side"] = kha::to_string(side_);
  j["hdeg"] = nlohmann::json::object();
  for (std::size_t i = 0; i < q_->size(); ++i) j["hdeg"][q_->nodes()[i]] = n_[i];
  j["poly"] = nlohmann::json::array();
  for (const auto& [z, c] : terms()) {
    nlohmann::json exps = nlohmann::json::object();
    for (const auto& [s, e] : z.entries()) exps[symbol_name(s)] = e;
    j["poly"].push_back({{"coeff", c.to_string()}, {"exps", exps}});
  }
  return j;
}

ShuffleElement ShuffleElement::from_json(const nlohmann::json& j) {
  auto q = std::make_shared<const Quiver>(Quiver::from_json(j.at("quiver")));
  Side side = parse_side(j.value("side", std::string("positive")));
  DimVector n(q->size());
  for (const auto& [node, v] : j.at("hdeg").items()) n[q->index(node)] = v.get<int>();
  VarTable vt(*q, n);
  std::vector<std::pair<RatFun, Monomial>> parts;
  LaurentPoly lcm(1);
  for (const auto& t : j.at("poly")) {
    RatFun c = parse_ratfun(t.at("coeff").get<std::string>());
    std::vector<Monomial::Entry> es;
    for (const auto& [name, e] : t.at("exps").items()) {
      Symbol s = intern(name);
      if (!vt.is_z(s)) throw std::invalid_argument("variable " + name + " not in hdeg");
      es.emplace_back(s, e.get<int>());
    }
    LaurentPoly g = gcd(lcm, c.den());
    lcm = lcm * *divide_exact(c.den(), g);
    parts.emplace_back(c, Monomial::from_entries(std::move(es)));
  }
  LaurentPoly num;
  for (const auto& [c, z] : parts) num += (c.num() * *divide_exact(lcm, c.den())).mul_monomial(z);
  return ShuffleElement(q, n, num, lcm, side);
}

std::string ShuffleElement::to_string() const {
  auto ts = terms();
  if (ts.empty()) return "0";
  std::string out;
  for (const auto& [z, c] : ts) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    if (!z.is_one()) out += "*" + z.to_string();
  }
  return out;
}

}  // namespace kha
