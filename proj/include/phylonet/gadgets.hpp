#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phylonet/core.hpp"

namespace phylonet {

// Undirected multigraph with named nodes plus a multiset of terminal pairs.
// File format: optional `graph` header, `u v` edge lines, `node x` for
// isolated nodes, `pair s t` lines; `#` starts a comment.
struct NdpInstance {
  std::vector<std::string> nodes;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> pairs;  // (s, t) node ids

  int node(const std::string& name);  // id, created on first use
  std::string str() const;
};

NdpInstance parse_ndp(const std::string& text);

// Raised when the instance is a NO instance for a trivial reason
// (terminal in more than three pairs, pair split over components).
struct TrivialNo : Error {
  using Error::Error;
};

// Brute-force: pairs get paths with pairwise disjoint interiors that avoid
// all terminals; each edge is used at most once. Returns one path (node ids)
// per pair, or nothing.
std::optional<std::vector<std::vector<int>>> ndp_oracle(const NdpInstance& I);

// Terminals end up with degree 1 and in exactly one pair, every other node
// has degree 3, no loops or parallel edges, components without terminals are
// dropped. Gadgets are applied for terminals in 3, then 2, then 1 pairs.
NdpInstance normalize_ndp(const NdpInstance& I);

// The gadget templates in their fixture text form (keys "1pair", "2pair",
// "3pair", "cap").
const std::string& gadget_template(const std::string& name);

struct UtcInstance {
  Network n, t;
  NdpInstance normalized;
};
// Tree: caterpillar of cherries (s_i, t_i) hanging from taxon rho. Network: the
// normalized graph where terminal s_i carries leaf s_i and hangs from the same
// spine, and terminal t_i is leaf t_i.
UtcInstance ndp_to_utc(const NdpInstance& I);

// Unrooted trees on X plus c_0..c_{L-1}, d_0..d_{L-1}; L = n + 1, or 2n + 3
// when `long_caterpillars`.
std::pair<Network, Network> hn_to_ruhn(const Network& t1, const Network& t2, bool long_caterpillars = false);

struct Backmap {
  Network network;    // rooted network on X displaying t1 and t2
  bool sensible = true;
  int p = 0, q = 0;   // reticulation numbers of the result and of the input
};
// `np` displays rootings r1, r2 of hn_to_ruhn(t1, t2) through images img1,
// img2. Sensible rootings: restrict to the parts of both images spanning X.
// Otherwise: the two trees merged at their taxa (|X| reticulations).
// Requires r(np) <= number of taxa of the rooted trees.
Backmap backmap_restriction(const Network& t1, const Network& t2, const Network& np, const Network& r1,
                            const Image& img1, const Network& r2, const Image& img2);

// the caterpillar parts of the two rootings are oppositely oriented
bool stupid_rooting(const Network& r1, const Network& r2, int n, int len);

Network merged_network(const Network& t1, const Network& t2);

}  // namespace phylonet
