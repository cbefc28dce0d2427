#include "phylonet/ruhn.hpp"

#include <algorithm>
#include <map>

#include "phylonet/hn.hpp"
#include "phylonet/newick.hpp"
#include "phylonet/utc.hpp"

namespace phylonet {

std::optional<int> displayed_rooting(const Network& n, const Network& t) {
  if (t.num_edges() == 0) return std::nullopt;
  for (int e = 0; e < t.num_edges(); ++e)
    if (rooted_tc(n, root_at_edge(t, e))) return e;
  return std::nullopt;
}

namespace {

bool displays_some_rooting(const Network& n, const std::vector<Network>& trees) {
  for (auto& t : trees) {
    if (t.num_nodes() == 1) continue;
    if (!displayed_rooting(n, t)) return false;
  }
  return true;
}

Network root_by_min_taxon(const Network& t) {
  int v = t.leaf_of().begin()->second;
  for (int e = 0; e < t.num_edges(); ++e)
    if (t.edges[e].u == v || t.edges[e].v == v) return root_at_edge(t, e);
  Network single = t;
  single.rooted = true;
  return single;
}

// Positions of taxa along sides: maximal arc-linked paths of tree nodes that
// carry a leaf child. Returns side id and depth per taxon (-1 off any side).
std::map<Taxon, std::pair<int, int>> taxon_sides(const Network& n) {
  auto inc = n.incidence();
  auto ind = n.indegrees(), outd = n.outdegrees();
  int V = n.num_nodes();
  std::vector<int> leaf_child(V, -1);
  auto is_leaf = [&](int v) { return !n.labels[v].empty(); };
  for (int v = 0; v < V; ++v) {
    if (outd[v] != 2 || ind[v] > 1) continue;
    for (int e : inc[v])
      if (n.edges[e].u == v && is_leaf(n.edges[e].v)) {
        leaf_child[v] = n.edges[e].v;
        break;
      }
  }
  // bearing node -> next bearing node below it on the same side
  std::vector<int> next(V, -1), prev(V, -1);
  for (int v = 0; v < V; ++v) {
    if (leaf_child[v] < 0) continue;
    for (int e : inc[v]) {
      int c = n.edges[e].v;
      if (n.edges[e].u != v || c == leaf_child[v]) continue;
      if (leaf_child[c] >= 0 && ind[c] == 1) next[v] = c, prev[c] = v;
    }
  }
  std::map<Taxon, std::pair<int, int>> out;
  int side = 0;
  for (int v = 0; v < V; ++v) {
    if (leaf_child[v] < 0 || prev[v] >= 0) continue;
    int depth = 0;
    for (int x = v; x >= 0; x = next[x]) out[n.labels[leaf_child[x]]] = {side, depth++};
    ++side;
  }
  return out;
}

// Put the full chain on the side of x_i (0-based indices), forward when
// `forward`, keeping x_i in place.
Network place_chain(const Network& n, const std::vector<Taxon>& chain, int keep, int i, bool forward) {
  Network m = n;
  for (int l = 0; l < keep; ++l)
    if (l != i)
      for (auto& lab : m.labels)
        if (lab == chain[l]) lab.clear();
  m = tidy(m);
  int xi = m.leaf_of().at(chain[i]);
  int q = -1;
  for (auto& e : m.edges)
    if (e.v == xi) q = e.u;
  std::vector<Taxon> above, below;
  int t = int(chain.size());
  if (forward) {
    for (int l = 0; l < i; ++l) above.push_back(chain[l]);
    for (int l = i + 1; l < t; ++l) below.push_back(chain[l]);
  } else {
    for (int l = t - 1; l > i; --l) above.push_back(chain[l]);
    for (int l = i - 1; l >= 0; --l) below.push_back(chain[l]);
  }
  int e_in = -1, e_out = -1;
  for (int e = 0; e < m.num_edges(); ++e) {
    if (m.edges[e].v == q) e_in = e;
    if (m.edges[e].u == q && m.edges[e].v != xi) e_out = e;
  }
  if (e_in < 0) {
    int top = m.add_node();
    e_in = m.add_edge(top, q);
  }
  for (auto& y : above) {
    int s = m.subdivide(e_in);
    int half = m.num_edges() - 1;  // (s, q)
    m.add_edge(s, m.add_node(y));
    e_in = half;
  }
  for (auto& y : below) {
    int s = m.subdivide(e_out);
    int half = m.num_edges() - 1;  // (s, child)
    m.add_edge(s, m.add_node(y));
    e_out = half;
  }
  return tidy(m);
}

Network expand_chain(const Network& n, const Step& st, const std::vector<Network>& target) {
  const auto& chain = st.taxa;
  int d = st.keep;
  auto sides = taxon_sides(n);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      if (a == b) continue;
      auto ia = sides.find(chain[a]), ib = sides.find(chain[b]);
      if (ia == sides.end() || ib == sides.end()) continue;
      if (ia->second.first != ib->second.first || ia->second.second >= ib->second.second) continue;
      // x_a sits above x_b; skip the end pairs the argument excludes
      bool forward = a < b;
      if (forward && a == 0 && b == 1) continue;
      if (!forward && a == d - 1 && b == d - 2) continue;
      Network m = place_chain(n, chain, d, a, forward);
      if (displays_some_rooting(m, target)) return m;
    }
  throw Error("expanding step: no side placement displays the unreduced trees");
}

}  // namespace

Network lift_network(const Network& kernel_net, const ReductionLog& log,
                     const std::vector<std::vector<Network>>& stages) {
  Network n = kernel_net;
  for (int i = int(log.steps.size()) - 1; i >= 0; --i) {
    const Step& st = log.steps[i];
    if (st.kind == Step::Kind::CPS) {
      if (!st.shape.rooted) {
        n = root_by_min_taxon(st.shape);
      } else {
        n = graft(n, st.fresh, st.shape);
      }
      if (!displays_some_rooting(n, stages[i])) throw Error("lifting: re-expanded subtree breaks display");
    } else if (st.kind == Step::Kind::CC) {
      n = expand_chain(n, st, stages[i]);
    } else if (st.kind != Step::Kind::Decide) {
      throw Error("lifting: unsupported step " + st.str());
    }
  }
  return n;
}

std::optional<RuhnSolution> ruhn_exact(const std::vector<Network>& trees, int k_max, const Guards& g) {
  if (trees.empty()) throw Error("ruhn_exact needs at least one tree");
  for (auto& t : trees) validate_unrooted(t, true);
  for (auto& t : trees)
    if (t.taxa() != trees[0].taxa()) throw Error("trees have different taxa");
  std::vector<Network> distinct;
  {
    std::set<std::string> seen;
    for (auto& t : trees)
      if (seen.insert(canonical_unrooted(t)).second) distinct.push_back(t);
  }
  auto finish = [&](int value, const Network& net) {
    RuhnSolution s;
    s.value = value;
    s.network = net;
    if (reticulation_number(net) != value) throw Error("ruhn_exact: lifted network has the wrong reticulation number");
    if (net.num_nodes() > 1) validate_rooted(net);
    for (auto& t : trees) {
      if (t.num_nodes() == 1) {
        s.rootings.push_back(-1);
        s.rooted.push_back(root_by_min_taxon(t));
        s.images.push_back(make_image(net, {}));
        continue;
      }
      auto e = displayed_rooting(net, t);
      if (!e) throw Error("ruhn_exact: lifted network misses every rooting of an input tree");
      s.rootings.push_back(*e);
      s.rooted.push_back(root_at_edge(t, *e));
      s.images.push_back(*rooted_tc(net, s.rooted.back()));
    }
    return s;
  };
  if (distinct.size() == 1) return finish(0, root_by_min_taxon(distinct[0]));
  for (int k = 1; k <= k_max; ++k) {
    if (k < 31 && distinct.size() > (size_t(1) << k)) continue;
    auto ker = kernelize_ruhn(distinct, k);
    if (ker.decided && !*ker.decided) continue;
    std::vector<std::vector<Network>> stages{distinct};
    {
      std::vector<Network> cur = distinct;
      for (auto& st : ker.log.steps) {
        ReductionLog one;
        one.steps.push_back(st);
        if (st.kind != Step::Kind::Decide) cur = replay_forward(cur, one);
        stages.push_back(cur);
      }
    }
    const auto& kt = ker.trees;
    if (ker.decided || kt[0].taxa().size() == 1) {
      Network single = kt[0];
      single.rooted = true;
      Network lifted = lift_network(single, ker.log, stages);
      return finish(reticulation_number(lifted), lifted);
    }
    // all rooting combinations of the kernel trees, in lexicographic order
    std::vector<int> radix;
    long long total = 1;
    for (auto& t : kt) radix.push_back(t.num_edges()), total *= t.num_edges();
    int chunk = std::max(1, threads());
    for (long long start = 0; start < total; start += chunk) {
      int len = int(std::min<long long>(chunk, total - start));
      std::vector<std::optional<HnSolution>> got(len);
      parallel_for(len, [&](int j) {
        long long idx = start + j;
        std::vector<Network> rooted(kt.size());
        for (int i = int(kt.size()) - 1; i >= 0; --i) {
          rooted[i] = root_at_edge(kt[i], int(idx % radix[i]));
          idx /= radix[i];
        }
        got[j] = hn_exact(rooted, k, g);
      });
      for (int j = 0; j < len; ++j)
        if (got[j]) {
          Network lifted = lift_network(got[j]->network, ker.log, stages);
          return finish(reticulation_number(lifted), lifted);
        }
    }
  }
  return std::nullopt;
}

std::string RuhnSolution::str(const std::vector<Network>& trees, const std::vector<std::string>& names) const {
  std::string s = "h_ru = " + std::to_string(value) + "\n";
  for (size_t i = 0; i < trees.size(); ++i) {
    std::string name = i < names.size() && !names[i].empty() ? names[i] : "T" + std::to_string(i + 1);
    s += "root " + name + " " + (rootings[i] < 0 ? std::string("-") : describe_split(trees[i], rootings[i])) + "\n";
  }
  s += write_network(network) + "\n";
  for (size_t i = 0; i < images.size(); ++i) {
    std::string name = i < names.size() && !names[i].empty() ? names[i] : "T" + std::to_string(i + 1);
    s += "image " + name;
    for (int e : images[i].edges) s += " " + std::to_string(e);
    s += "\n";
  }
  return s;
}

}  // namespace phylonet
