#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "kha/hopf.hpp"

namespace kha {

std::string version();

struct RunConfig {
  std::string verb;
  std::string quiver_path;
  std::vector<std::string> inputs;
  std::string output;  // JSON result; stdout when empty
  std::string report;  // human-readable report; stderr when empty
  std::string dump_dir;

  std::string slope;   // "0,1/2"
  std::string hdeg;    // "2,1"
  std::string cutoff;  // "2"
  std::string shift;   // "1,-1"
  std::string side = "positive";
  std::string wheels = "literal";  // literal | off
  bool full = false;
  int order = 2;
  std::uint32_t seed = 1;
  int cases = 0;
  int framing = 2;
  std::vector<std::string> suites;

  std::string node;
  std::string v1, v2, w1, w2;
  std::string p1 = "1", p2 = "1";
  bool include_f = false;
  bool f_inverse = false;
  std::string reading = "included";  // included | excluded
};

/// Malformed input, with the offending file and position in the message.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exit status: 0 success, 1 a check or suite failed, 2 bad input.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

QuiverPtr load_quiver(const std::string& path);
/// Accepts a bare element file or any result file holding an "element".
ShuffleElement load_element(const std::string& path);
/// Comma-separated integers in node order.
DimVector parse_dims(const std::string& text, std::size_t nodes);

}  // namespace kha
