#pragma once

#include <ostream>
#include <set>
#include <string>

namespace phylonet {

struct SelftestOptions {
  std::string data_dir;  // fixture directory (example_pair.nwk, cycle_net.txt, ...)
  std::string cli;       // CLI binary for the determinism check; empty fails it
  std::set<int> only;    // criteria to run, empty = all
};

// Runs the acceptance criteria, one PASS/FAIL line each. Returns the number of failures.
int run_selftest(const SelftestOptions& opt, std::ostream& out);

}  // namespace phylonet
