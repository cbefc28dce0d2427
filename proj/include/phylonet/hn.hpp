#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "phylonet/core.hpp"
#include "phylonet/guards.hpp"

namespace phylonet {

// Rooted DAG multigraph without labels: one root of outdegree 1, r reticulations
// (indegree 2, outdegree <= 1), all other nodes indegree 1 / outdegree 2.
// r = 0 is the degenerate single arc from the root to an open end.
struct Generator {
  Network g;
  int r = 0;
  std::vector<int> edge_sides;  // arc ids
  std::vector<int> node_sides;  // reticulations of outdegree 0
  std::string canon;
};

std::vector<Generator> enumerate_generators(int r, const Guards& g = default_guards());
std::string generator_canonical(const Network& g);

// Hang the edge-side sequences (top to bottom) and node-side labels on a
// generator and clean up; empty node-side labels leave the side unfilled.
Network realise(const Generator& g, const std::vector<std::vector<Taxon>>& edge_seq,
                const std::vector<Taxon>& node_lab);

// Streams every valid network with r(N) = r(G) obtained by distributing X over
// the sides; `visit` returns false to stop early.
void attach_taxa(const Generator& g, const TaxonSet& x, const std::function<bool(const Network&)>& visit);

struct HnSolution {
  int value = 0;
  Network network;
  std::vector<Image> images;  // one per input tree
};

// Smallest k <= k_max with a rooted network displaying every tree. Common
// pendant subtrees are collapsed and, for two trees, common clusters are solved
// separately before the generator search. The guards bound each generator search.
std::optional<HnSolution> hn_exact(const std::vector<Network>& trees, int k_max, const Guards& g = default_guards());

// Smallest k <= k_max such that some unrooted network with r = k displays every
// tree; networks are grown leaf by leaf from the cubic cores.
std::optional<int> uhn_exhaustive_oracle(const std::vector<Network>& trees, int k_max,
                                         const Guards& g = default_guards());

// replace the leaf labelled `leaf` by the rooted structure `sub`
Network graft(const Network& host, const Taxon& leaf, const Network& sub);

}  // namespace phylonet
