#pragma once

#include <random>
#include <string>
#include <vector>

#include "phylonet/core.hpp"
#include "phylonet/gadgets.hpp"

namespace phylonet {

// a..z, then t26, t27, ...
std::vector<Taxon> taxa_names(int n);

// random unrooted binary tree by stepwise leaf insertion
Network random_tree(int n, std::mt19937_64& rng);
Network random_rooted_tree(int n, std::mt19937_64& rng);

// random tree plus r extra edges between subdivided distinct edges
Network random_network(int n, int r, std::mt19937_64& rng);

// a tree displayed by N: random spanning tree, pruned and suppressed
Network random_displayed_tree(const Network& n, std::mt19937_64& rng);

// multigraph on `v` nodes with maximum degree 3 plus `p` pairs
NdpInstance random_ndp(int v, int p, std::mt19937_64& rng);

}  // namespace phylonet
