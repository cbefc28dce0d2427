#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phylonet/core.hpp"
#include "phylonet/guards.hpp"
#include "phylonet/reduce.hpp"

namespace phylonet {

struct RuhnSolution {
  int value = 0;
  std::vector<int> rootings;     // per input tree: the edge carrying the root
  std::vector<Network> rooted;   // the rooted input trees
  Network network;               // rooted network displaying every rooted tree
  std::vector<Image> images;
  // value, one `root <name> <split>` line per tree, the eNewick network, then
  // one `image <name> <edge ids>` line per tree
  std::string str(const std::vector<Network>& trees, const std::vector<std::string>& names) const;
};

// Iterative deepening on k: kernelize, try every rooting combination of the
// kernel trees with hn_exact, then lift the network back through the log.
std::optional<RuhnSolution> ruhn_exact(const std::vector<Network>& trees, int k_max,
                                       const Guards& g = default_guards());

// Undo a reduction log on a rooted network: CPS steps are re-expanded and
// truncated chains are re-inserted along one generator side. `stages[i]` are
// the unrooted trees before step i. Every lifted network is re-verified.
Network lift_network(const Network& kernel_net, const ReductionLog& log, const std::vector<std::vector<Network>>& stages);

// Rooting of `t` displayed by `n` (edge id of t), trying edges in index order.
std::optional<int> displayed_rooting(const Network& n, const Network& t);

}  // namespace phylonet
