#pragma once

#include <optional>

#include "phylonet/core.hpp"
#include "phylonet/guards.hpp"

namespace phylonet {

// Rooted containment by trying every choice of one incoming edge per reticulation.
std::optional<Image> rooted_tc(const Network& n, const Network& t);

// Unrooted containment by cherry branching, optionally after kernelization.
bool utc_solve(const Network& n, const Network& t, bool use_kernel = false);

// Certificate for a YES instance: greedily deletes edges while the remainder
// still displays T (checked with the branching algorithm, no kernel).
std::optional<Image> utc_certificate(const Network& n, const Network& t);

// Exhaustive search over the minimal subtrees of N that span all taxa, grown
// one taxon at a time (in leaf order of T) by attaching a path; a partial
// subtree is dropped once its tidy-up differs from T restricted to the taxa
// placed so far. Throws GuardExceeded above guards.oracle_edges.
std::optional<Image> utc_oracle(const Network& n, const Network& t, const Guards& g = default_guards());

// Literal brute force over spanning trees of N (each one the complement of
// r(N) edges), same guard.
std::optional<Image> utc_subset_oracle(const Network& n, const Network& t, const Guards& g = default_guards());

// Edges of a tree that lie on paths between taxa.
std::vector<int> taxon_spanning_edges(const Network& n, const std::vector<int>& tree_edges);

// Does the image reproduce the guest tree after suppressing degree-2 nodes?
bool image_matches(const Network& host, const Image& img, const Network& guest);

}  // namespace phylonet
