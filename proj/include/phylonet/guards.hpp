#pragma once

#include <functional>

namespace phylonet {

// Size limits for the exhaustive oracles. Overridable through
// PHYLONET_GUARD_<FIELD> environment variables (e.g. PHYLONET_GUARD_ORACLE_EDGES).
struct Guards {
  int oracle_edges = 24;   // utc_oracle
  int maf_taxa = 10;       // maf_exact without bounded search
  int tbr_taxa = 7;        // tbr_bfs_oracle
  int hn_taxa = 6;         // hn_exact, per residual instance
  int hn_k = 3;            // hn_exact reticulations
  int uhn_oracle_taxa = 6; // uhn_exhaustive_oracle
  int uhn_oracle_k = 2;
  int generator_r = 3;     // enumerate_generators

  static Guards from_env();
};

// process-wide defaults, read from the environment once
Guards& default_guards();

// worker count used by parallel scans (1 = sequential)
void set_threads(int n);
int threads();

// Runs f(i) for i in [0, n) on up to threads() workers. Callers write results
// into per-index slots, so output never depends on scheduling.
void parallel_for(int n, const std::function<void(int)>& f);

}  // namespace phylonet
