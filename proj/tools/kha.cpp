#include <iostream>

#include "CLI11.hpp"
#include "kha/cli.hpp"

int main(int argc, char** argv) {
  kha::RunConfig c;
  CLI::App app{"Exact computations in quiver shuffle algebras"};
  app.set_version_flag("--version", kha::version());
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", c.output, "JSON result file (default stdout)");
    sub->add_option("--report", c.report, "human-readable report (default stderr)");
    sub->add_option("--seed", c.seed, "random seed");
    return sub;
  };
  auto with_quiver = [&](CLI::App* sub) {
    sub->add_option("--quiver", c.quiver_path, "quiver JSON")->required()->check(CLI::ExistingFile);
    return sub;
  };
  auto with_wheels = [&](CLI::App* sub) {
    sub->add_option("--wheels", c.wheels, "wheel conditions")->check(CLI::IsMember({"literal", "off"}));
    return sub;
  };
  auto files = [&](CLI::App* sub, int n) {
    sub->add_option("inputs", c.inputs, "element files")->required()->expected(n)->check(CLI::ExistingFile);
    return sub;
  };

  files(common(app.add_subcommand("product", "shuffle product of two elements")), 2);
  auto* shift = files(common(app.add_subcommand("shift", "shift automorphism")), 1);
  shift->add_option("--k", c.shift, "shift vector, comma separated")->required();
  with_wheels(files(common(app.add_subcommand("wheel", "wheel conditions of an element")), 1));
  auto* slope = files(common(app.add_subcommand("slope-test", "slope and naive slope tests")), 1);
  slope->add_option("--m", c.slope, "slope vector, e.g. 0,1/2");

  auto* basis = with_wheels(with_quiver(common(app.add_subcommand("basis", "echelon basis of a slope piece"))));
  basis->add_option("--m", c.slope, "slope vector");
  basis->add_option("--n", c.hdeg, "horizontal degree")->required();
  basis->add_option("--side", c.side)->check(CLI::IsMember({"positive", "negative"}));

  auto* cop = files(common(app.add_subcommand("coproduct", "Drinfeld or slope coproduct")), 1);
  auto* full = cop->add_flag("--full", c.full, "Drinfeld coproduct");
  auto* sl = cop->add_flag("--slope", "slope coproduct (default)");
  full->excludes(sl);
  cop->add_option("--order", c.order, "truncation order of the full coproduct");
  cop->add_option("--m", c.slope, "slope vector");

  files(common(app.add_subcommand("pair", "Hopf pairing <F, G>")), 2);

  auto* gram = with_wheels(with_quiver(common(app.add_subcommand("gram", "Gram matrix and dual basis"))));
  gram->add_option("--m", c.slope, "slope vector");
  gram->add_option("--n", c.hdeg, "horizontal degree")->required();

  auto* rm = with_wheels(with_quiver(common(app.add_subcommand("rmatrix", "reduced R-matrix up to a cutoff"))));
  rm->add_option("--m", c.slope, "slope vector");
  rm->add_option("--cutoff", c.cutoff, "horizontal degree cutoff")->required();

  auto* tw = with_quiver(common(app.add_subcommand("intertwine", "stable envelope intertwining check")));
  tw->add_option("--i", c.node, "node");
  tw->add_option("--v1", c.v1);
  tw->add_option("--v2", c.v2);
  tw->add_option("--w1", c.w1);
  tw->add_option("--w2", c.w2);
  tw->add_option("--p1", c.p1, "power-sum expression, e.g. p1[1]*p2[1] + 1");
  tw->add_option("--p2", c.p2);
  tw->add_flag("--include-f", c.include_f, "also check f_i(z)");
  tw->add_flag("--f-inverse", c.f_inverse, "f action with the inverse wedge factor");
  tw->add_option("--reading", c.reading)->check(CLI::IsMember({"included", "excluded"}));

  auto* ver = with_wheels(with_quiver(common(app.add_subcommand("verify", "run verification suites"))));
  ver->add_option("--suite", c.suites, "suite name (repeatable)");
  ver->add_option("--cases", c.cases, "cases per randomized suite (0 = default)");
  ver->add_option("--framing", c.framing, "largest framing entry in the intertwine suite");
  ver->add_option("--dump", c.dump_dir, "directory for counterexample element files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  c.verb = app.get_subcommands().front()->get_name();
  return kha::run(c, std::cout, std::cerr);
}
