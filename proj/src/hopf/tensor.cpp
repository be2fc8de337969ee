#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "internal.hpp"
#include "kha/parse.hpp"

namespace kha {

namespace {

using LegInfo = detail::LegSymbol;

std::mutex registry_mutex;
std::unordered_map<Symbol, LegInfo>& registry() {
  static std::unordered_map<Symbol, LegInfo> r;
  return r;
}

Symbol register_symbol(const std::string& name, const LegInfo& info) {
  Symbol s = intern(name);
  std::lock_guard<std::mutex> lock(registry_mutex);
  registry().emplace(s, info);
  return s;
}

const LegInfo* leg_info(Symbol s) {
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto it = registry().find(s);
  return it == registry().end() ? nullptr : &it->second;
}

}  // namespace

Symbol leg_symbol(const Quiver& q, std::size_t i, std::size_t a, std::size_t leg) {
  std::string name =
      "z_" + q.nodes().at(i) + "_" + std::to_string(a + 1) + "@" + std::to_string(leg + 1);
  return register_symbol(name, {false, leg, i, static_cast<int>(a), false});
}

Symbol cartan_symbol(const Quiver& q, std::size_t i, int p, bool minus, std::size_t leg) {
  std::string name = std::string(minus ? "hm_" : "hp_") + q.nodes().at(i) + "_" +
                     std::to_string(p) + "@" + std::to_string(leg + 1);
  return register_symbol(name, {true, leg, i, p, minus});
}

// ---------------------------------------------------------------- element

TensorElement::TensorElement(QuiverPtr q, std::vector<Side> sides, std::optional<int> order)
    : q_(std::move(q)), sides_(std::move(sides)), order_(order) {
  if (!q_) throw std::invalid_argument("tensor element without a quiver");
  if (order_ && *order_ < 0) throw std::invalid_argument("negative truncation order");
}

namespace {

// Renames the variables of a leg-local element onto tensor leg `leg`.
std::map<Symbol, Symbol> onto_leg(const Quiver& q, const DimVector& n, std::size_t leg) {
  VarTable vt(q, n);
  std::map<Symbol, Symbol> ren;
  for (std::size_t i = 0; i < vt.colors(); ++i)
    for (std::size_t a = 0; a < vt.color(i).size(); ++a) ren[vt.at(i, a)] = leg_symbol(q, i, a, leg);
  return ren;
}

Monomial cartan_monomial(const Quiver& q, const std::vector<CartanFactor>& cs, std::size_t leg) {
  std::vector<Monomial::Entry> es;
  for (const CartanFactor& c : cs) es.emplace_back(cartan_symbol(q, c.node, c.p, c.minus, leg), c.power);
  return Monomial::from_entries(std::move(es));
}

bool is_param(Symbol s) { return leg_info(s) == nullptr; }

// Splits off the monomial factor made of leg and Cartan symbols.
std::pair<Monomial, Monomial> split_params(const Monomial& m) {
  std::vector<Monomial::Entry> legs, params;
  for (const auto& e : m.entries()) (is_param(e.first) ? params : legs).push_back(e);
  return {Monomial::from_entries(std::move(legs)), Monomial::from_entries(std::move(params))};
}

// Groups the terms by their leg/Cartan part; values are polynomials in the
// parameters.
std::map<Monomial, LaurentPoly, std::function<bool(const Monomial&, const Monomial&)>> group_params(
    const LaurentPoly& p) {
  std::map<Monomial, LaurentPoly, std::function<bool(const Monomial&, const Monomial&)>> out(
      [](const Monomial& a, const Monomial& b) { return compare(a, b) < 0; });
  std::unordered_map<Monomial, std::vector<LaurentPoly::Term>, MonomialHash> acc;
  for (const auto& [m, c] : p.terms()) {
    auto [legs, params] = split_params(m);
    acc[legs].emplace_back(params, c);
  }
  for (auto& [m, ts] : acc) out.emplace(m, LaurentPoly::from_terms(std::move(ts)));
  return out;
}

void reduce_part(TensorElement::Part& part) {
  if (part.num.is_zero()) {
    part.den = LaurentPoly(1);
    return;
  }
  if (part.den.is_constant()) {
    if (part.den.constant_value() != 1) {
      part.num *= Rational(1) / part.den.constant_value();
      part.den = LaurentPoly(1);
    }
    return;
  }
  LaurentPoly g = part.den;
  for (const auto& [m, c] : group_params(part.num)) {
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  if (!g.is_constant()) {
    part.num = *divide_exact(part.num, g);
    part.den = *divide_exact(part.den, g);
  }
  LaurentPoly u = part.den.unit_normal();
  if (u != part.den) {
    LaurentPoly unit = *divide_exact(part.den, u);
    part.num = *divide_exact(part.num, unit);
    part.den = u;
  }
}

std::optional<int> weaker(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

TensorElement TensorElement::pure(const std::vector<ShuffleElement>& legs,
                                  const std::vector<std::vector<CartanFactor>>& cartan) {
  if (legs.empty()) throw std::invalid_argument("tensor with no legs");
  std::vector<Side> sides;
  Key key;
  LaurentPoly num(1), den(1);
  for (std::size_t l = 0; l < legs.size(); ++l) {
    const ShuffleElement& e = legs[l];
    if (e.quiver() != legs[0].quiver()) throw std::invalid_argument("legs over different quivers");
    sides.push_back(e.side());
    key.push_back(e.hdeg());
    num *= e.num().rename(onto_leg(e.quiver(), e.hdeg(), l));
    den *= e.den();
    if (l < cartan.size()) num = num.mul_monomial(cartan_monomial(e.quiver(), cartan[l], l));
  }
  TensorElement t(legs[0].quiver_ptr(), sides);
  t.add(key, num, den);
  return t;
}

void TensorElement::add(const Key& key, const LaurentPoly& num, const LaurentPoly& den) {
  if (key.size() != arity()) throw std::invalid_argument("tensor component of wrong arity");
  if (num.is_zero()) return;
  auto it = parts_.find(key);
  if (it == parts_.end()) {
    Part p{num, den};
    reduce_part(p);
    parts_.emplace(key, std::move(p));
    return;
  }
  Part& p = it->second;
  if (p.den == den) {
    p.num += num;
  } else {
    p.num = p.num * den + num * p.den;
    p.den *= den;
  }
  reduce_part(p);
  if (p.num.is_zero()) parts_.erase(it);
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
  if (o.arity() != arity() || o.sides_ != sides_)
    throw std::invalid_argument("adding tensors of different shapes");
  TensorElement r = *this;
  r.order_ = weaker(order_, o.order_);
  for (const auto& [k, p] : o.parts_) r.add(k, p.num, p.den);
  return r;
}

TensorElement TensorElement::operator*(const RatFun& c) const {
  TensorElement r(q_, sides_, order_);
  if (c.is_zero()) return r;
  for (const auto& [k, p] : parts_) r.add(k, p.num * c.num(), p.den * c.den());
  return r;
}

TensorElement TensorElement::operator-(const TensorElement& o) const { return *this + o * RatFun(-1); }

bool TensorElement::operator==(const TensorElement& o) const {
  if (arity() != o.arity() || sides_ != o.sides_) return false;
  for (const auto& [k, p] : parts_) {
    auto it = o.parts_.find(k);
    if (it == o.parts_.end()) return false;
    if (p.num * it->second.den != it->second.num * p.den) return false;
  }
  for (const auto& [k, p] : o.parts_)
    if (!parts_.count(k)) return false;
  return true;
}

TensorElement TensorElement::filter(
    const std::function<bool(const Key&, const Monomial&)>& keep) const {
  TensorElement r(q_, sides_, order_);
  for (const auto& [k, p] : parts_)
    r.add(k, p.num.filter([&](const Monomial& m) { return keep(k, m); }), p.den);
  return r;
}

namespace {

// Exponent vector of the leg-`leg` variables of m, colour by colour.
Orbit leg_exponents(const Monomial& m, const Quiver& q, const DimVector& n, std::size_t leg) {
  Orbit o(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    for (int a = 0; a < n[i]; ++a) o[i].push_back(m.exponent(leg_symbol(q, i, a, leg)));
  return o;
}

bool is_sorted_orbit(const Orbit& o) {
  for (const auto& v : o)
    if (!std::is_sorted(v.begin(), v.end(), std::greater<int>())) return false;
  return true;
}

// Drops the leg-`leg` variables from m.
Monomial without_leg_vars(const Monomial& m, std::size_t leg) {
  std::vector<Monomial::Entry> es;
  for (const auto& e : m.entries()) {
    const LegInfo* li = leg_info(e.first);
    if (li && !li->cartan && li->leg == leg) continue;
    es.push_back(e);
  }
  return Monomial::from_entries(std::move(es));
}

}  // namespace

TensorElement TensorElement::apply_to_leg(
    std::size_t leg, const std::function<TensorElement(const ShuffleElement&)>& f) const {
  if (leg >= arity()) throw std::out_of_range("tensor leg out of range");
  std::optional<TensorElement> out;
  for (const auto& [key, part] : parts_) {
    const DimVector& n = key[leg];
    // coefficient of each sorted orbit representative
    std::map<Orbit, std::vector<LaurentPoly::Term>> groups;
    for (const auto& [m, c] : part.num.terms()) {
      Orbit o = leg_exponents(m, *q_, n, leg);
      if (!is_sorted_orbit(o)) continue;
      groups[o].emplace_back(without_leg_vars(m, leg), c);
    }
    for (auto& [orbit, terms] : groups) {
      LaurentPoly rest = LaurentPoly::from_terms(std::move(terms));
      TensorElement image = f(orbit_sum(q_, n, orbit, sides_[leg]));
      std::size_t r = image.arity();
      if (!out) {
        std::vector<Side> sides(sides_.begin(), sides_.begin() + leg);
        sides.insert(sides.end(), image.sides_.begin(), image.sides_.end());
        sides.insert(sides.end(), sides_.begin() + leg + 1, sides_.end());
        out.emplace(q_, sides, weaker(order_, image.order_));
      }
      out->order_ = weaker(out->order_, image.order_);
      // shift the remaining legs and duplicate the Cartan factors of `leg`
      std::map<Symbol, std::pair<Rational, Monomial>> sub;
      for (Symbol s : rest.variables()) {
        const LegInfo* li = leg_info(s);
        if (!li) continue;
        if (li->leg > leg) {
          Symbol t = li->cartan ? cartan_symbol(*q_, li->node, li->index, li->minus, li->leg + r - 1)
                                : leg_symbol(*q_, li->node, li->index, li->leg + r - 1);
          sub[s] = {1, Monomial::var(t)};
        } else if (li->leg == leg && li->cartan) {
          std::vector<Monomial::Entry> es;
          for (std::size_t u = 0; u < r; ++u)
            es.emplace_back(cartan_symbol(*q_, li->node, li->index, li->minus, leg + u), 1);
          sub[s] = {1, Monomial::from_entries(es)};
        }
      }
      LaurentPoly moved = rest.substitute_monomials(sub);
      std::map<Symbol, Symbol> shift_image;
      for (const auto& [ikey, ipart] : image.parts_) {
        for (Symbol s : ipart.num.variables()) {
          const LegInfo* li = leg_info(s);
          if (!li || shift_image.count(s)) continue;
          shift_image[s] = li->cartan ? cartan_symbol(*q_, li->node, li->index, li->minus, li->leg + leg)
                                      : leg_symbol(*q_, li->node, li->index, li->leg + leg);
        }
        Key k(key.begin(), key.begin() + leg);
        k.insert(k.end(), ikey.begin(), ikey.end());
        k.insert(k.end(), key.begin() + leg + 1, key.end());
        out->add(k, ipart.num.rename(shift_image) * moved, ipart.den * part.den);
      }
    }
  }
  if (!out) {
    // zero input: learn the output shape from the image of zero
    TensorElement image = f(ShuffleElement::constant(q_, RatFun(0), sides_[leg]));
    std::vector<Side> sides(sides_.begin(), sides_.begin() + leg);
    sides.insert(sides.end(), image.sides_.begin(), image.sides_.end());
    sides.insert(sides.end(), sides_.begin() + leg + 1, sides_.end());
    return TensorElement(q_, sides, weaker(order_, image.order_));
  }
  return *out;
}

std::vector<TensorElement::Summand> TensorElement::summands() const {
  std::vector<Summand> out;
  std::size_t last = arity() - 1;
  for (const auto& [key, part] : parts_) {
    // group by (sorted orbits of the first legs, Cartan part)
    std::map<std::pair<std::vector<Orbit>, std::vector<std::tuple<std::size_t, std::size_t, int, bool, int>>>,
             std::vector<LaurentPoly::Term>>
        groups;
    for (const auto& [m, c] : part.num.terms()) {
      std::vector<Orbit> orbits;
      bool canonical = true;
      for (std::size_t l = 0; l < last; ++l) {
        orbits.push_back(leg_exponents(m, *q_, key[l], l));
        canonical = canonical && is_sorted_orbit(orbits.back());
      }
      if (!canonical) continue;
      std::vector<std::tuple<std::size_t, std::size_t, int, bool, int>> cartan;
      std::vector<Monomial::Entry> rest;
      for (const auto& e : m.entries()) {
        const LegInfo* li = leg_info(e.first);
        if (li && li->cartan) {
          cartan.emplace_back(li->leg, li->node, li->index, li->minus, e.second);
        } else if (!li || li->leg == last) {
          rest.push_back(e);
        }
      }
      std::sort(cartan.begin(), cartan.end());
      groups[{orbits, cartan}].emplace_back(Monomial::from_entries(std::move(rest)), c);
    }
    for (auto& [g, terms] : groups) {
      Summand s;
      s.cartan.resize(arity());
      for (const auto& [l, node, p, minus, pw] : g.second) s.cartan[l].push_back({node, p, minus, pw});
      for (std::size_t l = 0; l < last; ++l)
        s.legs.push_back(orbit_sum(q_, key[l], g.first[l], sides_[l]));
      std::map<Symbol, Symbol> back;
      VarTable vt(*q_, key[last]);
      for (std::size_t i = 0; i < vt.colors(); ++i)
        for (std::size_t a = 0; a < vt.color(i).size(); ++a)
          back[leg_symbol(*q_, i, a, last)] = vt.at(i, a);
      s.legs.emplace_back(q_, key[last], LaurentPoly::from_terms(std::move(terms)).rename(back),
                          part.den, sides_[last]);
      out.push_back(std::move(s));
    }
  }
  return out;
}

// ------------------------------------------------------------------ JSON

namespace {

nlohmann::json leg_json(const Quiver& q, const DimVector& n, const Monomial& m, std::size_t leg) {
  nlohmann::json j;
  j["hdeg"] = nlohmann::json::object();
  for (std::size_t i = 0; i < q.size(); ++i) j["hdeg"][q.nodes()[i]] = n[i];
  j["cartan"] = nlohmann::json::array();
  j["exps"] = nlohmann::json::object();
  std::vector<nlohmann::json> cartan;
  for (const auto& [s, e] : m.entries()) {
    const LegInfo* li = leg_info(s);
    if (!li || li->leg != leg) continue;
    if (li->cartan) {
      cartan.push_back({{"node", q.nodes()[li->node]},
                        {"p", li->minus ? -li->index : li->index},
                        {"sign", li->minus ? "-" : "+"},
                        {"pow", e}});
    } else {
      j["exps"]["z_" + q.nodes()[li->node] + "_" + std::to_string(li->index + 1)] = e;
    }
  }
  std::sort(cartan.begin(), cartan.end(),
            [](const auto& a, const auto& b) { return a.dump() < b.dump(); });
  for (auto& c : cartan) j["cartan"].push_back(std::move(c));
  return j;
}

Monomial leg_from_json(const Quiver& q, const nlohmann::json& j, std::size_t leg, DimVector& n) {
  n = DimVector(q.size());
  for (const auto& [node, v] : j.at("hdeg").items()) n[q.index(node)] = v.get<int>();
  VarTable vt(q, n);
  std::vector<Monomial::Entry> es;
  for (const auto& [name, e] : j.at("exps").items()) {
    Symbol s = intern(name);
    bool found = false;
    for (std::size_t i = 0; i < vt.colors() && !found; ++i)
      for (std::size_t a = 0; a < vt.color(i).size(); ++a)
        if (vt.at(i, a) == s) {
          es.emplace_back(leg_symbol(q, i, a, leg), e.get<int>());
          found = true;
          break;
        }
    if (!found) throw std::invalid_argument("variable " + name + " not in leg hdeg");
  }
  for (const auto& c : j.at("cartan")) {
    std::size_t i = q.index(c.at("node").get<std::string>());
    bool minus = c.at("sign").get<std::string>() == "-";
    int p = std::abs(c.at("p").get<int>());
    es.emplace_back(cartan_symbol(q, i, p, minus, leg), c.value("pow", 1));
  }
  return Monomial::from_entries(std::move(es));
}

std::vector<std::string> leg_names(std::size_t arity) {
  if (arity == 2) return {"left", "right"};
  return {};
}

}  // namespace

nlohmann::json TensorElement::to_json() const {
  nlohmann::json j;
  j["quiver"] = q_->to_json();
  j["sides"] = nlohmann::json::array();
  for (Side s : sides_) j["sides"].push_back(kha::to_string(s));
  j["order"] = order_ ? nlohmann::json(*order_) : nlohmann::json("exact");
  std::vector<nlohmann::json> terms;
  auto names = leg_names(arity());
  for (const auto& [key, part] : parts_) {
    for (const auto& [m, c] : group_params(part.num)) {
      nlohmann::json t;
      nlohmann::json legs = nlohmann::json::array();
      for (std::size_t l = 0; l < arity(); ++l) legs.push_back(leg_json(*q_, key[l], m, l));
      if (names.empty()) {
        t["legs"] = legs;
      } else {
        for (std::size_t l = 0; l < arity(); ++l) t[names[l]] = legs[l];
      }
      t["coeff"] = RatFun::normalize(c, part.den).to_string();
      terms.push_back(std::move(t));
    }
  }
  std::sort(terms.begin(), terms.end(), [](const nlohmann::json& a, const nlohmann::json& b) {
    nlohmann::json ka = a, kb = b;
    ka.erase("coeff");
    kb.erase("coeff");
    return ka.dump() < kb.dump();
  });
  j["terms"] = terms;
  return j;
}

TensorElement TensorElement::from_json(const nlohmann::json& j) {
  auto q = std::make_shared<const Quiver>(Quiver::from_json(j.at("quiver")));
  std::vector<Side> sides;
  for (const auto& s : j.at("sides")) sides.push_back(parse_side(s.get<std::string>()));
  std::optional<int> order;
  if (j.contains("order") && j.at("order").is_number_integer()) order = j.at("order").get<int>();
  TensorElement t(q, sides, order);
  auto names = leg_names(sides.size());
  for (const auto& term : j.at("terms")) {
    Key key;
    std::vector<Monomial::Entry> es;
    for (std::size_t l = 0; l < sides.size(); ++l) {
      const nlohmann::json& lj = names.empty() ? term.at("legs").at(l) : term.at(names[l]);
      DimVector n;
      Monomial m = leg_from_json(*q, lj, l, n);
      key.push_back(n);
      for (const auto& e : m.entries()) es.push_back(e);
    }
    RatFun c = parse_ratfun(term.at("coeff").get<std::string>());
    t.add(key, c.num().mul_monomial(Monomial::from_entries(std::move(es))), c.den());
  }
  return t;
}

std::string TensorElement::to_string() const {
  if (parts_.empty()) return "0";
  std::string out;
  for (const auto& s : summands()) {
    if (!out.empty()) out += " + ";
    for (std::size_t l = 0; l < arity(); ++l) {
      if (l) out += " (x) ";
      std::string h;
      for (const auto& c : s.cartan[l]) {
        h += "h_" + q_->nodes()[c.node] + "," + (c.minus ? "-" : "") + std::to_string(c.p);
        if (c.power != 1) h += "^" + std::to_string(c.power);
        h += " ";
      }
      out += "[" + h + s.legs[l].to_string() + "]";
    }
  }
  return out;
}

namespace detail {

std::optional<LegSymbol> describe(Symbol s) {
  const LegInfo* li = leg_info(s);
  if (!li) return std::nullopt;
  return *li;
}

TensorCoords coordinates(const TensorElement& t) {
  TensorCoords out;
  for (const auto& [key, part] : t.parts())
    for (const auto& [m, c] : group_params(part.num))
      out[{key, m.to_string()}] = RatFun::normalize(c, part.den);
  return out;
}

std::vector<std::vector<Symbol>> leg_vars(const Quiver& q, const DimVector& n, std::size_t leg) {
  std::vector<std::vector<Symbol>> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    for (int a = 0; a < n[i]; ++a) out[i].push_back(leg_symbol(q, i, a, leg));
  return out;
}

}  // namespace detail

}  // namespace kha
