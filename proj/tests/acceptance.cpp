#include <CLI11.hpp>
#include <iostream>

#include "selftest.hpp"

// One PASS/FAIL line per acceptance criterion; exit status is the failure count.
int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  phylonet::SelftestOptions opt;
  opt.data_dir = PHYLONET_DATA_DIR;
  std::vector<int> only;
  app.add_option("--cli", opt.cli, "CLI binary for the determinism check");
  app.add_option("--data", opt.data_dir, "fixture directory");
  app.add_option("--criteria", only, "criteria to run (default all)")->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  opt.only.insert(only.begin(), only.end());
  int failed = phylonet::run_selftest(opt, std::cout);
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
