#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "kha/geom.hpp"
#include "kha/hopf.hpp"

namespace kha {

struct SuiteOptions {
  std::uint32_t seed = 1;
  // 0 picks the suite default.
  int cases = 0;
  // Largest framing entry in the intertwining grid.
  int framing = 2;
  WheelOptions wheels;
};

struct Counterexample {
  std::string what;
  // Element files where the failure involves elements, otherwise plain data.
  nlohmann::json data;
};

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> notes;
  std::vector<Counterexample> counterexamples;
  double seconds = 0;

  bool passed() const { return checked > 0 && failed == 0; }
  void record(bool ok, const std::string& what, nlohmann::json data = nullptr);
  void merge(const SuiteResult& o);
  nlohmann::json to_json() const;
};

std::vector<std::string> suite_names();
/// Runs a named suite on one quiver. Throws std::invalid_argument on an
/// unknown name.
SuiteResult run_suite(const std::string& name, QuiverPtr q, const SuiteOptions& opt = {});

SuiteResult associativity_suite(QuiverPtr q, const SuiteOptions& opt);
SuiteResult pole_suite(QuiverPtr q, const SuiteOptions& opt);
SuiteResult wheel_closure_suite(QuiverPtr q, const SuiteOptions& opt);
SuiteResult slope_closure_suite(QuiverPtr q, const SuiteOptions& opt);
SuiteResult pairing_suite(QuiverPtr q, const SuiteOptions& opt);
SuiteResult bialgebra_suite(QuiverPtr q, const SuiteOptions& opt);
SuiteResult slope_structure_suite(QuiverPtr q, const SuiteOptions& opt);
SuiteResult slope_coproduct_suite(QuiverPtr q, const SuiteOptions& opt);
SuiteResult right_leg_suite(QuiverPtr q, const SuiteOptions& opt);
SuiteResult quasi_triangular_suite(QuiverPtr q, const SuiteOptions& opt);
/// bialgebra, slope coproduct, right legs and quasi-triangularity together.
SuiteResult hopf_suite(QuiverPtr q, const SuiteOptions& opt);
/// e and h intertwining at every node: v1 + v2 <= 2 in total, framing
/// entries up to opt.framing, power-sum words of degree <= 2.
SuiteResult intertwine_suite(QuiverPtr q, const SuiteOptions& opt);

/// 1, p1, p2 and p1 p1 words on every node, as strings.
std::vector<std::string> power_sum_words(const Quiver& q);
/// Every nonnegative vector with entries summing to at most `total`.
std::vector<DimVector> dims_up_to(std::size_t n, int total);

}  // namespace kha
