#pragma once

#include <string>
#include <vector>

#include "phylonet/core.hpp"
#include "phylonet/guards.hpp"

namespace phylonet {

struct AgreementForest {
  std::vector<TaxonSet> blocks;  // sorted by minimum taxon
  std::string str() const;       // one block per line, taxa comma-separated
};

// nodes of the minimal subtree of T connecting S (the leaf itself for |S| = 1)
std::vector<char> spanning_nodes(const Network& t, const TaxonSet& s);

bool is_agreement_forest(const Network& t1, const Network& t2, const std::vector<TaxonSet>& blocks);

// Minimum agreement forest by iterative deepening on the block count over
// restricted-growth assignments, pruned by both forest conditions on partial
// blocks. Above guards.maf_taxa the caller must opt into the bounded search.
AgreementForest maf_exact(const Network& t1, const Network& t2, bool bounded = false,
                          const Guards& g = default_guards());

// breadth-first search over tree space using TBR moves
int tbr_bfs_oracle(const Network& t1, const Network& t2, const Guards& g = default_guards());
std::vector<Network> tbr_neighbours(const Network& t);

struct UhnNetwork {
  Network net;
  Image img1, img2;
};

// Start from T1 and wire the forest components together in elimination order.
UhnNetwork network_from_forest(const Network& t1, const Network& t2, const AgreementForest& f);
// Extend img1 to a spanning tree (edge-index order); edges only in img2 cut T2 into the forest.
AgreementForest forest_from_network(const Network& n, const Image& img1, const Image& img2);

struct UhnSolution {
  int value;
  AgreementForest forest;
  UhnNetwork network;
};
UhnSolution uhn_solve(const Network& t1, const Network& t2, const Guards& g = default_guards());

}  // namespace phylonet
