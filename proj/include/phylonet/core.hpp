#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace phylonet {

using Taxon = std::string;
using TaxonSet = std::set<Taxon>;

// names starting with this prefix are reserved for generated taxa
inline constexpr const char* kReservedPrefix = "__";

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// raised when an exact oracle would exceed its configured size limit
struct GuardExceeded : Error {
  using Error::Error;
};

struct Edge {
  int u, v;  // rooted: u -> v
};

// Multigraph with optional leaf labels. Used for rooted and unrooted trees and
// networks alike; the `rooted` flag says whether edges are directed.
// Parallel edges and loops may appear in intermediate states.
struct Network {
  bool rooted = false;
  std::vector<Taxon> labels;  // per node, empty when unlabelled
  std::vector<Edge> edges;

  int num_nodes() const { return int(labels.size()); }
  int num_edges() const { return int(edges.size()); }
  int add_node(const Taxon& label = {});
  int add_edge(int u, int v);

  std::vector<std::vector<int>> incidence() const;  // node -> incident edge ids (loops twice)
  std::vector<int> degrees() const;
  std::vector<int> indegrees() const;
  std::vector<int> outdegrees() const;
  int other(int e, int x) const { return edges[e].u == x ? edges[e].v : edges[e].u; }

  TaxonSet taxa() const;
  std::map<Taxon, int> leaf_of() const;
  int root() const;  // rooted only: the unique indegree-0 node, -1 otherwise
  bool connected() const;

  // new network without the given nodes/edges; node ids are compacted
  Network without(const std::vector<char>& drop_node, const std::vector<char>& drop_edge,
                  std::vector<int>* node_map = nullptr, std::vector<int>* edge_map = nullptr) const;
  Network without_edges(const std::vector<int>& es) const;
  // subdivide edge e, returns the new node; edge e becomes (u,w), new edge (w,v)
  int subdivide(int e);
};

int reticulation_number(const Network& n);

enum class Mode { Unrooted, Rooted };

// structural checks; throw Error with a reason
void validate_unrooted(const Network& n, bool require_tree = false);
void validate_rooted(const Network& n, bool require_tree = false);
bool is_valid_unrooted(const Network& n, bool require_tree = false);
bool is_valid_rooted(const Network& n, bool require_tree = false);
void reject_reserved_taxa(const TaxonSet& taxa);

// Cleanup to a fixed point. Unrooted: drop unlabelled degree <= 1 nodes,
// suppress degree-2 nodes, delete loops and one copy of parallel edges.
// Rooted: drop unlabelled outdegree-0 nodes, suppress in1/out1 nodes, drop
// in0/out1 nodes, collapse parallel arcs. Labelled nodes are never removed.
// `keep_multi` leaves loops and parallel edges alone.
Network tidy(const Network& n, bool keep_multi = false);

// Drop connected components without taxa. Returns false if the taxa are split
// over several components.
bool drop_taxon_free_components(Network& n);

// unrooted restriction T|S (minimal subtree on S, suppressed)
Network restrict_to_taxa(const Network& t, const TaxonSet& s);
// rooted restriction of a rooted tree
Network restrict_rooted(const Network& t, const TaxonSet& s);
Network delete_taxa(const Network& n, const TaxonSet& s);

// canonical strings; equal strings <=> labelled isomorphic
std::string canonical_rooted(const Network& t);
std::string canonical_unrooted(const Network& t);
// rooted canonical form of an unrooted tree hanging from edge e, seen from node `from`
std::string canonical_subtree(const Network& t, const std::vector<std::vector<int>>& inc, int node,
                              int parent_edge);
bool labelled_isomorphic(const Network& a, const Network& b);

Network root_at_edge(const Network& t, int e);
Network unroot(const Network& t);

Network caterpillar(const std::vector<Taxon>& order);         // unrooted, n >= 2
Network rooted_caterpillar(const std::vector<Taxon>& order);  // rooted, top leaf first

// An image of a tree inside a host: host edge ids plus induced node set.
struct Image {
  std::vector<int> edges;
  std::vector<int> nodes;
  std::map<Taxon, int> leaf_map;
};
Image make_image(const Network& host, std::vector<int> edges);
// subgraph of `host` on the image edges, optionally tidied
Network image_subgraph(const Network& host, const Image& img, bool tidy_it = true);

// cherries of a tree as sorted taxon pairs
std::vector<std::pair<Taxon, Taxon>> cherries(const Network& t);
// split induced by tree edge e: taxa on the side of edge.v (unrooted) or below (rooted)
TaxonSet split_side(const Network& t, int e);
std::string describe_split(const Network& t, int e);

std::vector<int> topo_order(const Network& n);  // rooted only; empty if cyclic

// bridge flags per edge, treating edges as undirected (parallel copies are never bridges)
std::vector<char> bridges(const Network& n);
// nodes reachable from `start` without crossing edge `skip`
std::vector<char> reach_without(const Network& n, const std::vector<std::vector<int>>& inc, int start, int skip);

}  // namespace phylonet
