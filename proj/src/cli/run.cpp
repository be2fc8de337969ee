#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "kha/cli.hpp"
#include "kha/geom.hpp"
#include "kha/parse.hpp"
#include "kha/verify.hpp"

#ifndef KHA_VERSION
#define KHA_VERSION "0.0.0"
#endif

namespace kha {

std::string version() { return KHA_VERSION; }

namespace {

using nlohmann::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot write");
  out << text;
}

WheelOptions wheel_options(const std::string& name) {
  if (name == "literal") return {};
  if (name == "off") return {false, Companion::Off};
  throw std::invalid_argument("--wheels must be literal or off, got " + name);
}

json elements_json(const std::vector<ShuffleElement>& xs) {
  json j = json::array();
  for (const auto& x : xs) j.push_back(x.to_json());
  return j;
}

// What a verb produces: the JSON payload, report lines and the exit status.
struct Outcome {
  QuiverPtr quiver;
  json result;
  std::vector<std::string> lines;
  int status = 0;
};

QuiverPtr config_quiver(const RunConfig& c) {
  if (c.quiver_path.empty()) throw std::invalid_argument(c.verb + " needs --quiver");
  return load_quiver(c.quiver_path);
}

ShuffleElement input(const RunConfig& c, std::size_t k) {
  if (c.inputs.size() <= k) throw std::invalid_argument(c.verb + " needs " + std::to_string(k + 1) + " element file(s)");
  return load_element(c.inputs[k]);
}

Slope config_slope(const RunConfig& c, const Quiver& q) {
  if (c.slope.empty()) return Slope(q.size());
  return Slope::parse(c.slope, q.size());
}

Outcome do_product(const RunConfig& c) {
  ShuffleElement F = input(c, 0), G = input(c, 1);
  ShuffleElement P = shuffle_product(F, G);
  return {P.quiver_ptr(), {{"element", P.to_json()}}, {"hdeg " + P.hdeg().to_string(), "terms " + std::to_string(P.terms().size())}};
}

Outcome do_shift(const RunConfig& c) {
  ShuffleElement F = input(c, 0);
  ShuffleElement S = shift(F, parse_dims(c.shift, F.quiver().size()));
  return {S.quiver_ptr(), {{"element", S.to_json()}}, {"shifted by " + c.shift}};
}

Outcome do_wheel(const RunConfig& c) {
  ShuffleElement F = input(c, 0);
  WheelOptions opt = wheel_options(c.wheels);
  bool ok = wheel_check(F, opt);
  std::size_t n = wheel_specializations(F.quiver(), F.hdeg(), opt).size();
  return {F.quiver_ptr(),
          {{"wheel_check", ok}, {"specializations", n}, {"wheels", c.wheels}},
          {std::string("wheel_check ") + (ok ? "PASS" : "FAIL") + " over " + std::to_string(n) + " specializations"},
          ok ? 0 : 1};
}

Outcome do_slope_test(const RunConfig& c) {
  ShuffleElement F = input(c, 0);
  Slope m = config_slope(c, F.quiver());
  bool ok = slope_test(F, m);
  json naive = nullptr;
  if (F.is_homogeneous()) naive = naive_slope_eq(F, m);
  Outcome o{F.quiver_ptr(), {{"slope", m.to_string()}, {"slope_test", ok}, {"naive_slope", naive}}, {}, ok ? 0 : 1};
  o.lines.push_back(std::string("slope_test at ") + m.to_string() + " " + (ok ? "PASS" : "FAIL"));
  o.lines.push_back("naive slope " + (naive.is_null() ? std::string("n/a (not homogeneous)") : naive.get<bool>() ? "PASS" : "FAIL"));
  return o;
}

Outcome do_basis(const RunConfig& c) {
  QuiverPtr q = config_quiver(c);
  Slope m = config_slope(c, *q);
  DimVector n = parse_dims(c.hdeg, q->size());
  GradedPiece g = slope_basis(q, m, n, parse_side(c.side), wheel_options(c.wheels));
  json r = {{"slope", m.to_string()}, {"hdeg", n.to_string()}, {"side", c.side},
            {"vdeg", g.vdeg},         {"dimension", g.basis.size()}, {"basis", elements_json(g.basis)}};
  return {q, r, {"dim B_{" + m.to_string() + "|" + n.to_string() + "} = " + std::to_string(g.basis.size()) +
                 ", vdeg " + std::to_string(g.vdeg)}};
}

Outcome do_coproduct(const RunConfig& c) {
  ShuffleElement F = input(c, 0);
  if (c.full) {
    TensorElement D = coproduct_full(F, c.order);
    return {F.quiver_ptr(), {{"coproduct", "full"}, {"order", c.order}, {"tensor", D.to_json()}},
            {"full coproduct to order " + std::to_string(c.order) + ", " + std::to_string(D.parts().size()) + " components"}};
  }
  Slope m = config_slope(c, F.quiver());
  TensorElement D = coproduct_slope(F, m);
  return {F.quiver_ptr(), {{"coproduct", "slope"}, {"slope", m.to_string()}, {"tensor", D.to_json()}},
          {"slope coproduct at " + m.to_string() + ", " + std::to_string(D.parts().size()) + " components"}};
}

Outcome do_pair(const RunConfig& c) {
  ShuffleElement F = input(c, 0), G = input(c, 1);
  RatFun v = pair(F, G);
  return {F.quiver_ptr(), {{"value", v.to_string()}}, {"<F, G> = " + v.to_string()}};
}

json matrix_json(const Matrix& M) {
  json j = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < M.cols(); ++k) row.push_back(M(i, k).to_string());
    j.push_back(row);
  }
  return j;
}

Outcome do_gram(const RunConfig& c) {
  QuiverPtr q = config_quiver(c);
  Slope m = config_slope(c, *q);
  DimVector n = parse_dims(c.hdeg, q->size());
  PairingTable t = gram_and_dual(q, m, n, wheel_options(c.wheels));
  json r = {{"slope", m.to_string()},
            {"hdeg", n.to_string()},
            {"positive", elements_json(t.positive)},
            {"negative", elements_json(t.negative)},
            {"gram", matrix_json(t.gram)},
            {"dual", elements_json(t.dual)}};
  return {q, r, {"Gram matrix " + std::to_string(t.gram.rows()) + "x" + std::to_string(t.gram.cols())}};
}

Outcome do_rmatrix(const RunConfig& c) {
  QuiverPtr q = config_quiver(c);
  Slope m = config_slope(c, *q);
  DimVector cutoff = parse_dims(c.cutoff, q->size());
  TensorElement R = rmatrix(q, m, cutoff, wheel_options(c.wheels));
  json r = {{"slope", m.to_string()},
            {"cutoff", cutoff.to_string()},
            {"cartan_prefactor", rmatrix_cartan_prefactor(*q)},
            {"reduced", R.to_json()}};
  return {q, r, {"R = " + rmatrix_cartan_prefactor(*q) + " * R'", "R' has " + std::to_string(R.parts().size()) + " components"}};
}

Outcome do_intertwine(const RunConfig& c) {
  QuiverPtr q = config_quiver(c);
  std::size_t i = q->index(c.node.empty() ? q->nodes().front() : c.node);
  auto dims = [&](const std::string& s) { return s.empty() ? DimVector(q->size()) : parse_dims(s, q->size()); };
  IntertwineOptions opt;
  opt.include_f = c.include_f;
  opt.f_wedge = c.f_inverse ? FWedge::Inverse : FWedge::Literal;
  if (c.reading == "excluded") opt.reading = NewRoot::Excluded;
  else if (c.reading != "included") throw std::invalid_argument("--reading must be included or excluded");
  IntertwineReport rep = intertwine_check(*q, i, dims(c.v1), dims(c.v2), dims(c.w1), dims(c.w2),
                                          KClass::parse(*q, c.p1), KClass::parse(*q, c.p2), opt);
  json r = {{"node", q->nodes()[i]}, {"e", rep.e}, {"h", rep.h}, {"status", rep.ok() ? "PASS" : "FAIL"}};
  std::vector<std::string> lines;
  lines.push_back(std::string("e: ") + (rep.e ? "PASS" : "FAIL"));
  lines.push_back(std::string("h: ") + (rep.h ? "PASS" : "FAIL"));
  if (!rep.e) r["e_difference"] = rep.e_difference.to_string();
  if (!rep.h) r["h_difference"] = rep.h_difference.to_string();
  if (rep.f_ran) {
    r["f"] = rep.f;
    lines.push_back(std::string("f: ") + (rep.f ? "PASS" : "FAIL"));
    if (!rep.f) r["f_difference"] = rep.f_difference.to_string();
  }
  for (const char* k : {"e_difference", "h_difference", "f_difference"})
    if (r.contains(k)) lines.push_back(std::string(k) + " = " + r[k].get<std::string>());
  lines.push_back(rep.ok() ? "PASS" : "FAIL");
  return {q, r, lines, rep.ok() ? 0 : 1};
}

Outcome do_verify(const RunConfig& c) {
  QuiverPtr q = config_quiver(c);
  SuiteOptions opt;
  opt.seed = c.seed;
  opt.cases = c.cases;
  opt.framing = c.framing;
  opt.wheels = wheel_options(c.wheels);
  std::vector<std::string> suites = c.suites;
  if (suites.empty()) suites = {"associativity", "wheel-closure", "slope-closure", "pairing", "hopf", "intertwine"};
  Outcome o{q, {{"suites", json::array()}}, {}, 0};
  std::size_t dumped = 0;
  for (const auto& name : suites) {
    SuiteResult r = run_suite(name, q, opt);
    o.result["suites"].push_back(r.to_json());
    o.lines.push_back(name + ": " + (r.passed() ? "PASS" : "FAIL") + " (" + std::to_string(r.checked - r.failed) + "/" +
                      std::to_string(r.checked) + ")");
    for (const auto& n : r.notes) o.lines.push_back("  " + n);
    for (const auto& ce : r.counterexamples) {
      o.lines.push_back("  counterexample: " + ce.what);
      if (c.dump_dir.empty()) continue;
      std::filesystem::create_directories(c.dump_dir);
      // element files are written on their own so they can be fed back in
      std::vector<json> files;
      if (ce.data.is_object() && ce.data.contains("poly")) files.push_back(ce.data);
      else if (ce.data.is_array())
        for (const auto& d : ce.data) files.push_back(d);
      else files.push_back(ce.data);
      for (const auto& f : files) {
        std::string path = c.dump_dir + "/" + name + "_" + std::to_string(++dumped) + ".json";
        write_text(path, f.dump(2) + "\n", std::cout);
        o.lines.push_back("    wrote " + path);
      }
    }
    if (!r.passed()) o.status = 1;
  }
  return o;
}

const std::map<std::string, std::function<Outcome(const RunConfig&)>>& verbs() {
  static const std::map<std::string, std::function<Outcome(const RunConfig&)>> table = {
      {"product", do_product}, {"shift", do_shift},         {"wheel", do_wheel},
      {"slope-test", do_slope_test}, {"basis", do_basis},   {"coproduct", do_coproduct},
      {"pair", do_pair},       {"gram", do_gram},           {"rmatrix", do_rmatrix},
      {"intertwine", do_intertwine}, {"verify", do_verify}};
  return table;
}

}  // namespace

QuiverPtr load_quiver(const std::string& path) {
  json j = read_json(path);
  try {
    return std::make_shared<const Quiver>(Quiver::from_json(j.contains("quiver") ? j.at("quiver") : j));
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

ShuffleElement load_element(const std::string& path) {
  json j = read_json(path);
  if (j.contains("result")) j = j.at("result");
  if (j.contains("element")) j = j.at("element");
  try {
    return ShuffleElement::from_json(j);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw InputError(path + ": coefficient: " + e.what());
  }
}

DimVector parse_dims(const std::string& text, std::size_t nodes) {
  DimVector v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    int x = 0;
    try {
      x = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < part.size() && part[used] == ' ') ++used;
    if (part.empty() || used != part.size())
      throw std::invalid_argument("bad integer '" + part + "' in '" + text + "'");
    v.v.push_back(x);
  }
  if (v.size() != nodes)
    throw std::invalid_argument("'" + text + "' must have " + std::to_string(nodes) + " entries");
  return v;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto it = verbs().find(config.verb);
  if (it == verbs().end()) {
    err << "unknown verb '" << config.verb << "'\n";
    return 2;
  }
  Outcome o;
  try {
    o = it->second(config);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const std::string hash = o.quiver ? o.quiver->hash() : "";
  json meta = {{"tool", "kha"}, {"version", version()}, {"verb", config.verb}, {"quiver_hash", hash}, {"seed", config.seed}};
  json doc = {{"meta", meta}, {"result", o.result}};
  std::string report = "kha " + version() + " " + config.verb + " quiver " + hash + " seed " +
                       std::to_string(config.seed) + "\n";
  for (const auto& l : o.lines) report += l + "\n";
  try {
    write_text(config.output, doc.dump(2) + "\n", out);
    write_text(config.report, report, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return o.status;
}

}  // namespace kha
