#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "kha/cli.hpp"

using namespace kha;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

QuiverPtr jordan() { return std::make_shared<const Quiver>(Quiver::jordan()); }

struct Scratch {
  fs::path dir;
  Scratch() : dir(fs::temp_directory_path() / ("kha_test_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string put(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
  std::string put(const std::string& name, const json& j) const { return put(name, j.dump(2)); }
};

struct Ran {
  int status;
  std::string out, err;
};

Ran run_verb(RunConfig c) {
  std::ostringstream out, err;
  int s = run(c, out, err);
  return {s, out.str(), err.str()};
}

}  // namespace

TEST_CASE("product output carries the envelope and reads back as an element") {
  Scratch s;
  auto q = jordan();
  auto e0 = ShuffleElement::generator(q, 0, 0), e1 = ShuffleElement::generator(q, 0, 1);
  RunConfig c;
  c.verb = "product";
  c.inputs = {s.put("a.json", e0.to_json()), s.put("b.json", e1.to_json())};
  Ran r = run_verb(c);
  REQUIRE(r.status == 0);
  json doc = json::parse(r.out);
  CHECK(doc["meta"]["verb"] == "product");
  CHECK(doc["meta"]["quiver_hash"] == q->hash());
  CHECK(doc["meta"]["seed"] == 1);
  std::string back = s.put("p.json", r.out);
  CHECK(load_element(back) == shuffle_product(e0, e1));
  CHECK(r.err.find("hdeg (2)") != std::string::npos);
}

TEST_CASE("chained verbs accept earlier results") {
  Scratch s;
  auto q = jordan();
  RunConfig c;
  c.verb = "shift";
  c.shift = "1";
  c.inputs = {s.put("a.json", ShuffleElement::generator(q, 0, 0).to_json())};
  Ran r = run_verb(c);
  REQUIRE(r.status == 0);
  CHECK(load_element(s.put("b.json", r.out)) == ShuffleElement::generator(q, 0, 1));
}

TEST_CASE("malformed input exits 2 with a position") {
  Scratch s;
  RunConfig c;
  c.verb = "wheel";
  c.inputs = {s.put("bad.json", std::string("{\"quiver\": [1, 2,"))};
  Ran r = run_verb(c);
  CHECK(r.status == 2);
  CHECK(r.err.find("byte") != std::string::npos);
  CHECK(r.out.empty());

  c.inputs = {s.put("missing.json", json{{"hello", 1}})};
  CHECK(run_verb(c).status == 2);

  c.inputs = {(s.dir / "nope.json").string()};
  CHECK(run_verb(c).status == 2);

  c.verb = "frobnicate";
  CHECK(run_verb(c).status == 2);
}

TEST_CASE("bad coefficients and dimension vectors are input errors") {
  Scratch s;
  auto q = jordan();
  json j = ShuffleElement::generator(q, 0, 0).to_json();
  j["poly"][0]["coeff"] = "t +* 2";
  RunConfig c;
  c.verb = "wheel";
  c.inputs = {s.put("coef.json", j)};
  CHECK(run_verb(c).status == 2);

  CHECK(parse_dims("1, 2", 2) == DimVector{1, 2});
  CHECK_THROWS_AS(parse_dims("1,x", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_dims("1", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_dims("", 1), std::invalid_argument);
}

TEST_CASE("verify is reproducible for a fixed seed") {
  Scratch s;
  RunConfig c;
  c.verb = "verify";
  c.quiver_path = s.put("q.json", jordan()->to_json());
  c.suites = {"associativity", "poles"};
  c.cases = 5;
  c.seed = 3;
  Ran a = run_verb(c), b = run_verb(c);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.err == b.err);
  c.seed = 4;
  CHECK(run_verb(c).out != a.out);
}

TEST_CASE("dumped counterexamples reproduce the failure") {
  Scratch s;
  RunConfig c;
  c.verb = "verify";
  c.quiver_path = s.put("q.json", jordan()->to_json());
  c.suites = {"wheel-closure"};
  c.dump_dir = (s.dir / "dump").string();
  Ran r = run_verb(c);
  REQUIRE(r.status == 1);
  int files = 0;
  for (const auto& f : fs::directory_iterator(c.dump_dir)) {
    RunConfig w;
    w.verb = "wheel";
    w.inputs = {f.path().string()};
    CHECK(run_verb(w).status == 1);
    ++files;
  }
  CHECK(files > 0);
}

TEST_CASE("unknown suite names are rejected") {
  Scratch s;
  RunConfig c;
  c.verb = "verify";
  c.quiver_path = s.put("q.json", jordan()->to_json());
  c.suites = {"nonsense"};
  CHECK(run_verb(c).status == 2);
}
