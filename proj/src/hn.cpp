#include "phylonet/hn.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "phylonet/utc.hpp"

namespace phylonet {

namespace {

// Remove open ends (indegree 1, outdegree 0) and suppress indegree-1/outdegree-1
// nodes until nothing changes. Parallel arcs stay.
Network clean_generator(const Network& in) {
  Network n = in;
  while (true) {
    auto ind = n.indegrees(), outd = n.outdegrees();
    int v = -1;
    for (int x = 0; x < n.num_nodes() && v < 0; ++x)
      if ((ind[x] == 1 && outd[x] == 0) || (ind[x] == 1 && outd[x] == 1)) v = x;
    if (v < 0) return n;
    std::vector<char> dn(n.num_nodes(), 0), de(n.num_edges(), 0);
    dn[v] = 1;
    int a = -1, b = -1;
    for (int e = 0; e < n.num_edges(); ++e) {
      if (n.edges[e].v == v) a = n.edges[e].u, de[e] = 1;
      if (n.edges[e].u == v) b = n.edges[e].v, de[e] = 1;
    }
    std::vector<int> nm;
    Network m = n.without(dn, de, &nm);
    if (b >= 0) m.add_edge(nm[a], nm[b]);
    n = m;
  }
}

bool valid_generator(const Network& g, int r) {
  if (g.num_nodes() < 2 || topo_order(g).empty()) return false;
  auto ind = g.indegrees(), outd = g.outdegrees();
  int roots = 0, ret = 0;
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (ind[v] == 0) {
      ++roots;
      if (outd[v] != 1) return false;
    } else if (ind[v] == 2) {
      ++ret;
      if (outd[v] > 1) return false;
    } else if (!(ind[v] == 1 && outd[v] == 2)) {
      return false;
    }
  }
  return roots == 1 && ret == r;
}

Generator finish(Network g, int r) {
  Generator out;
  out.r = r;
  out.canon = generator_canonical(g);
  out.g = g;
  auto ind = g.indegrees(), outd = g.outdegrees();
  for (int e = 0; e < g.num_edges(); ++e) out.edge_sides.push_back(e);
  for (int v = 0; v < g.num_nodes(); ++v)
    if (ind[v] == 2 && outd[v] == 0) out.node_sides.push_back(v);
  return out;
}

// Rebuild g with nodes numbered by the canonical traversal.
Network relabel_canonical(const Network& g) {
  int root = g.root();
  std::vector<std::vector<int>> kids(g.num_nodes());
  for (auto& e : g.edges) kids[e.u].push_back(e.v);
  std::vector<int> tree_nodes;
  for (int v = 0; v < g.num_nodes(); ++v)
    if (kids[v].size() == 2) tree_nodes.push_back(v);
  std::string best;
  std::vector<int> best_id;
  for (int mask = 0; mask < (1 << tree_nodes.size()); ++mask) {
    std::vector<int> id(g.num_nodes(), -1);
    int next = 0;
    std::vector<int> st{root};
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      if (id[x] >= 0) continue;
      id[x] = next++;
      auto k = kids[x];
      auto it = std::find(tree_nodes.begin(), tree_nodes.end(), x);
      if (it != tree_nodes.end() && (mask >> (it - tree_nodes.begin()) & 1)) std::swap(k[0], k[1]);
      for (auto r = k.rbegin(); r != k.rend(); ++r) st.push_back(*r);
    }
    std::vector<std::pair<int, int>> arcs;
    for (auto& e : g.edges) arcs.push_back({id[e.u], id[e.v]});
    std::sort(arcs.begin(), arcs.end());
    std::string s;
    for (auto [a, b] : arcs) s += std::to_string(a) + ">" + std::to_string(b) + ";";
    if (best_id.empty() || s < best) best = s, best_id = id;
  }
  Network out;
  out.rooted = true;
  for (int v = 0; v < g.num_nodes(); ++v) out.add_node();
  std::vector<std::pair<int, int>> arcs;
  for (auto& e : g.edges) arcs.push_back({best_id[e.u], best_id[e.v]});
  std::sort(arcs.begin(), arcs.end());
  for (auto [a, b] : arcs) out.add_edge(a, b);
  return out;
}

}  // namespace

std::string generator_canonical(const Network& g) {
  Network c = relabel_canonical(g);
  std::string s;
  for (auto& e : c.edges) s += std::to_string(e.u) + ">" + std::to_string(e.v) + ";";
  return s;
}

std::vector<Generator> enumerate_generators(int r, const Guards& guards) {
  if (r < 0) throw Error("negative reticulation number");
  if (r > guards.generator_r)
    throw GuardExceeded("enumerate_generators: r = " + std::to_string(r) + " exceeds guard " +
                        std::to_string(guards.generator_r));
  Network base;
  base.rooted = true;
  base.add_edge(base.add_node(), base.add_node());
  std::vector<Network> level{base};
  for (int cur = 1; cur <= r; ++cur) {
    std::map<std::string, Network> found;
    auto offer = [&](const Network& cand) {
      Network c = clean_generator(cand);
      if (!valid_generator(c, cur)) return;
      Network rc = relabel_canonical(c);
      found.emplace(generator_canonical(rc), rc);
    };
    for (auto& g : level) {
      int m = g.num_edges();
      for (int e1 = 0; e1 < m; ++e1)
        for (int e2 = 0; e2 < m; ++e2) {
          // new arc between subdivisions of e1 (tail) and e2 (head)
          Network a = g;
          int u = a.subdivide(e1);
          int v = e1 == e2 ? a.subdivide(a.num_edges() - 1) : a.subdivide(e2);
          a.add_edge(u, v);
          offer(a);
          if (e2 < e1) continue;
          // new reticulation below subdivisions of e1 and e2
          Network b = g;
          int p = b.subdivide(e1);
          int q = e1 == e2 ? b.subdivide(b.num_edges() - 1) : b.subdivide(e2);
          int w = b.add_node();
          b.add_edge(p, w);
          b.add_edge(q, w);
          offer(b);
        }
      for (int e = 0; e < m; ++e) {
        // pendant pair of parallel arcs
        Network c = g;
        int w = c.subdivide(e);
        int u = c.add_node(), v = c.add_node();
        c.add_edge(w, u);
        c.add_edge(u, v);
        c.add_edge(u, v);
        offer(c);
      }
    }
    level.clear();
    for (auto& [k, g] : found) level.push_back(g);
  }
  std::vector<Generator> out;
  for (auto& g : level) out.push_back(finish(r == 0 ? relabel_canonical(g) : g, r));
  return out;
}

Network realise(const Generator& gen, const std::vector<std::vector<Taxon>>& edge_seq,
                const std::vector<Taxon>& node_lab) {
  Network n;
  n.rooted = true;
  for (int v = 0; v < gen.g.num_nodes(); ++v) n.add_node();
  for (size_t i = 0; i < gen.edge_sides.size(); ++i) {
    const Edge& e = gen.g.edges[gen.edge_sides[i]];
    int cur = e.u;
    for (auto& x : edge_seq[i]) {
      int p = n.add_node();
      n.add_edge(cur, p);
      n.add_edge(p, n.add_node(x));
      cur = p;
    }
    n.add_edge(cur, e.v);
  }
  for (size_t i = 0; i < gen.node_sides.size(); ++i)
    if (!node_lab[i].empty()) n.add_edge(gen.node_sides[i], n.add_node(node_lab[i]));
  return tidy(n, true);
}

namespace {

// tidy, then collapse any remaining parallel arcs (partial placements)
Network partial_network(const Generator& gen, const std::vector<std::vector<Taxon>>& seq,
                        const std::vector<Taxon>& lab) {
  return tidy(realise(gen, seq, lab));
}

struct Placement {
  const Generator& gen;
  const std::vector<Taxon>& order;
  // checks on the first i taxa; returns false to prune
  std::function<bool(int, const Network&)> partial_ok;
  std::function<bool(const Network&)> complete;  // returns false to stop
  std::vector<std::vector<Taxon>> seq;
  std::vector<Taxon> lab;
  bool stopped = false;

  Placement(const Generator& g, const std::vector<Taxon>& o) : gen(g), order(o) {
    seq.assign(g.edge_sides.size(), {});
    lab.assign(g.node_sides.size(), {});
  }

  int empty_node_sides() const {
    return int(std::count_if(lab.begin(), lab.end(), [](auto& s) { return s.empty(); }));
  }

  void step(int i) {
    if (stopped) return;
    int n = int(order.size());
    if (i == n) {
      if (empty_node_sides()) return;
      Network net = realise(gen, seq, lab);
      if (reticulation_number(net) != gen.r || !is_valid_rooted(net)) return;
      if (!complete(net)) stopped = true;
      return;
    }
    auto go = [&] {
      if (n - (i + 1) < empty_node_sides()) return;
      if (partial_ok && !partial_ok(i + 1, partial_network(gen, seq, lab))) return;
      step(i + 1);
    };
    const Taxon& x = order[i];
    for (size_t s = 0; s < lab.size() && !stopped; ++s) {
      if (!lab[s].empty()) continue;
      lab[s] = x;
      go();
      lab[s].clear();
    }
    for (size_t s = 0; s < seq.size() && !stopped; ++s)
      for (size_t pos = 0; pos <= seq[s].size() && !stopped; ++pos) {
        seq[s].insert(seq[s].begin() + pos, x);
        go();
        seq[s].erase(seq[s].begin() + pos);
      }
  }
};

}  // namespace

void attach_taxa(const Generator& g, const TaxonSet& x, const std::function<bool(const Network&)>& visit) {
  if (x.empty()) throw Error("attach_taxa needs at least one taxon");
  if (x.size() < g.node_sides.size()) throw Error("fewer taxa than node sides");
  std::vector<Taxon> order(x.begin(), x.end());
  Placement p(g, order);
  p.complete = visit;
  p.step(0);
}

Network graft(const Network& host, const Taxon& leaf, const Network& sub) {
  Network n = host;
  int x = n.leaf_of().at(leaf);
  n.labels[x].clear();
  int off = n.num_nodes();
  for (auto& l : sub.labels) n.add_node(l);
  for (auto& e : sub.edges) n.add_edge(e.u + off, e.v + off);
  int sr = sub.num_nodes() == 1 ? 0 : sub.root();
  n.add_edge(x, sr + off);
  return tidy(n, true);
}

namespace {

struct HnCtx {
  const Guards& g;
  int fresh = 0;
  Taxon name(const char* tag) { return std::string(kReservedPrefix) + tag + std::to_string(++fresh); }
};

struct HnResult {
  int value;
  Network net;
};

// cluster -> canonical shape, over every non-root internal node
std::map<TaxonSet, std::string> rooted_clusters(const Network& t) {
  std::map<TaxonSet, std::string> out;
  auto inc = t.incidence();
  int root = t.root();
  std::function<TaxonSet(int)> rec = [&](int v) {
    TaxonSet s;
    if (!t.labels[v].empty()) s.insert(t.labels[v]);
    for (int e : inc[v])
      if (t.edges[e].u == v) {
        auto c = rec(t.edges[e].v);
        s.insert(c.begin(), c.end());
      }
    if (v != root && s.size() >= 2) {
      int pe = -1;
      for (int e : inc[v])
        if (t.edges[e].v == v) pe = e;
      out[s] = canonical_subtree(t, inc, v, pe);
    }
    return s;
  };
  rec(root);
  return out;
}

Network collapse(const Network& t, const TaxonSet& c, const Taxon& fresh) {
  TaxonSet drop = c;
  drop.erase(drop.begin());
  Network m = delete_taxa(t, drop);
  for (auto& l : m.labels)
    if (l == *c.begin()) l = fresh;
  return m;
}

bool all_identical(const std::vector<Network>& trees) {
  auto c = canonical_rooted(trees[0]);
  for (auto& t : trees)
    if (canonical_rooted(t) != c) return false;
  return true;
}

std::optional<Network> generator_search(const std::vector<Network>& trees, int k, HnCtx& ctx) {
  auto taxa = trees[0].taxa();
  if (int(taxa.size()) > ctx.g.hn_taxa)
    throw GuardExceeded("hn_exact: residual instance with " + std::to_string(taxa.size()) + " taxa exceeds guard " +
                        std::to_string(ctx.g.hn_taxa));
  if (k > ctx.g.hn_k)
    throw GuardExceeded("hn_exact: k = " + std::to_string(k) + " exceeds guard " + std::to_string(ctx.g.hn_k));
  Guards gg = ctx.g;
  gg.generator_r = std::max(gg.generator_r, k);
  auto gens = enumerate_generators(k, gg);
  std::vector<Taxon> order(taxa.begin(), taxa.end());
  // restricted trees for every prefix length
  std::vector<std::vector<Network>> restr(order.size() + 1);
  for (size_t i = 3; i <= order.size(); ++i) {
    TaxonSet pre(order.begin(), order.begin() + i);
    for (auto& t : trees) restr[i].push_back(restrict_rooted(t, pre));
  }
  std::vector<std::optional<Network>> found(gens.size());
  int chunk = std::max(1, threads());
  for (size_t start = 0; start < gens.size(); start += chunk) {
    int len = int(std::min(gens.size() - start, size_t(chunk)));
    parallel_for(len, [&](int j) {
      Placement p(gens[start + j], order);
      p.partial_ok = [&](int i, const Network& part) {
        if (i < 3) return true;
        for (auto& t : restr[i])
          if (!rooted_tc(part, t)) return false;
        return true;
      };
      p.complete = [&](const Network& net) {
        for (auto& t : trees)
          if (!rooted_tc(net, t)) return true;
        found[start + j] = net;
        return false;
      };
      p.step(0);
    });
    for (int j = 0; j < len; ++j)
      if (found[start + j]) return found[start + j];
  }
  return std::nullopt;
}

std::optional<HnResult> solve(std::vector<Network> trees, int k_max, HnCtx& ctx) {
  if (all_identical(trees)) return HnResult{0, trees[0]};
  if (k_max <= 0) return std::nullopt;
  // collapse maximal common pendant subtrees
  std::vector<std::pair<Taxon, Network>> collapsed;
  {
    auto base = rooted_clusters(trees[0]);
    std::vector<TaxonSet> common;
    for (auto& [c, shape] : base) {
      bool ok = true;
      for (size_t i = 1; i < trees.size() && ok; ++i) {
        auto other = rooted_clusters(trees[i]);
        auto it = other.find(c);
        ok = it != other.end() && it->second == shape;
      }
      if (ok) common.push_back(c);
    }
    std::vector<TaxonSet> maximal;
    for (auto& c : common) {
      bool inside = false;
      for (auto& d : common)
        if (d.size() > c.size() && std::includes(d.begin(), d.end(), c.begin(), c.end())) inside = true;
      if (!inside) maximal.push_back(c);
    }
    for (auto& c : maximal) {
      Taxon f = ctx.name("s");
      collapsed.push_back({f, restrict_rooted(trees[0], c)});
      for (auto& t : trees) t = collapse(t, c, f);
    }
  }
  auto expand = [&](Network net) {
    for (auto it = collapsed.rbegin(); it != collapsed.rend(); ++it) net = graft(net, it->first, it->second);
    return net;
  };
  if (trees.size() == 2) {
    auto c1 = rooted_clusters(trees[0]), c2 = rooted_clusters(trees[1]);
    std::optional<TaxonSet> pick;
    for (auto& [c, s] : c1)
      if (c2.count(c) && (!pick || c.size() < pick->size())) pick = c;
    if (pick) {
      std::vector<Network> inner{restrict_rooted(trees[0], *pick), restrict_rooted(trees[1], *pick)};
      std::optional<HnResult> a;
      for (int k = 1; k <= k_max && !a; ++k) a = solve(inner, k, ctx);
      if (!a) return std::nullopt;
      Taxon f = ctx.name("k");
      std::vector<Network> outer{collapse(trees[0], *pick, f), collapse(trees[1], *pick, f)};
      std::optional<HnResult> b;
      for (int k = 0; k <= k_max - a->value && !b; ++k) b = solve(outer, k, ctx);
      if (!b) return std::nullopt;
      return HnResult{a->value + b->value, expand(graft(b->net, f, a->net))};
    }
  }
  for (int k = 1; k <= k_max; ++k) {
    auto n = generator_search(trees, k, ctx);
    if (n) return HnResult{k, expand(*n)};
  }
  return std::nullopt;
}

}  // namespace

std::optional<HnSolution> hn_exact(const std::vector<Network>& trees, int k_max, const Guards& g) {
  if (trees.empty()) throw Error("hn_exact needs at least one tree");
  for (auto& t : trees) validate_rooted(t, true);
  for (auto& t : trees)
    if (t.taxa() != trees[0].taxa()) throw Error("trees have different taxa");
  HnCtx ctx{g};
  std::optional<HnResult> res;
  for (int k = 0; k <= k_max && !res; ++k) res = solve(trees, k, ctx);
  if (!res) return std::nullopt;
  HnSolution s;
  s.value = res->value;
  s.network = res->net;
  validate_rooted(s.network);
  if (reticulation_number(s.network) != s.value) throw Error("hn_exact: network has the wrong reticulation number");
  for (auto& t : trees) {
    auto img = rooted_tc(s.network, t);
    if (!img) throw Error("hn_exact: network does not display an input tree");
    s.images.push_back(*img);
  }
  return s;
}

namespace {

// does the multigraph m display tree t? spanning trees are complements of r edges
bool multigraph_displays(const Network& m, const Network& t) {
  if (t.num_nodes() <= 3) return true;
  int E = m.num_edges(), r = E - m.num_nodes() + 1;
  std::string want = canonical_unrooted(t);
  std::vector<int> comb(r);
  std::iota(comb.begin(), comb.end(), 0);
  std::vector<int> parent(m.num_nodes());
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  while (true) {
    std::vector<char> del(E, 0);
    for (int e : comb) del[e] = 1;
    std::iota(parent.begin(), parent.end(), 0);
    bool tree = true;
    std::vector<int> kept;
    for (int e = 0; e < E && tree; ++e) {
      if (del[e]) continue;
      int a = find(m.edges[e].u), b = find(m.edges[e].v);
      if (a == b) tree = false;
      parent[a] = b;
      kept.push_back(e);
    }
    if (tree) {
      Image img = make_image(m, taxon_spanning_edges(m, kept));
      Network sub = image_subgraph(m, img);
      if (sub.taxa().size() == t.taxa().size() && canonical_unrooted(sub) == want) return true;
    }
    int i = r - 1;
    while (i >= 0 && comb[i] == E - r + i) --i;
    if (i < 0) return false;
    ++comb[i];
    for (int j = i + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
  }
}

}  // namespace

std::optional<int> uhn_exhaustive_oracle(const std::vector<Network>& trees, int k_max, const Guards& g) {
  if (trees.empty()) throw Error("uhn_exhaustive_oracle needs at least one tree");
  for (auto& t : trees) validate_unrooted(t, true);
  auto taxa = trees[0].taxa();
  for (auto& t : trees)
    if (t.taxa() != taxa) throw Error("trees have different taxa");
  if (int(taxa.size()) > g.uhn_oracle_taxa)
    throw GuardExceeded("uhn_exhaustive_oracle: " + std::to_string(taxa.size()) + " taxa exceeds guard " +
                        std::to_string(g.uhn_oracle_taxa));
  std::vector<Taxon> order(taxa.begin(), taxa.end());
  int n = int(order.size());
  auto identical = [&] {
    for (auto& t : trees)
      if (canonical_unrooted(t) != canonical_unrooted(trees[0])) return false;
    return true;
  };
  if (identical()) return 0;
  if (n <= 3) return 0;
  for (int k = 1; k <= k_max; ++k) {
    if (k > g.uhn_oracle_k)
      throw GuardExceeded("uhn_exhaustive_oracle: k = " + std::to_string(k) + " exceeds guard " +
                          std::to_string(g.uhn_oracle_k));
    // cubic cores with cyclomatic number k and the taxa placed so far
    std::vector<std::pair<Network, int>> start;
    if (k == 1) {
      Network m;
      int w = m.add_node();
      m.add_edge(w, w);
      m.add_edge(w, m.add_node(order[0]));
      start.push_back({m, 1});
    } else {
      for (int kind = 0; kind < 2; ++kind) {
        Network m;
        int a = m.add_node(), b = m.add_node();
        if (kind == 0) {
          for (int i = 0; i < 3; ++i) m.add_edge(a, b);
        } else {
          m.add_edge(a, a);
          m.add_edge(a, b);
          m.add_edge(b, b);
        }
        start.push_back({m, 0});
      }
      // cores with cyclomatic number >= 3 are grown from the k - 1 cores below
      for (int extra = 2; extra < k; ++extra) {
        std::vector<std::pair<Network, int>> next;
        for (auto& [m, c] : start)
          for (int e1 = 0; e1 < m.num_edges(); ++e1)
            for (int e2 = e1; e2 < m.num_edges(); ++e2) {
              Network x = m;
              int u = x.subdivide(e1);
              int v = e1 == e2 ? x.subdivide(x.num_edges() - 1) : x.subdivide(e2);
              x.add_edge(u, v);
              next.push_back({x, 0});
            }
        start = next;
      }
    }
    bool hit = false;
    std::function<void(const Network&, int)> grow = [&](const Network& m, int placed) {
      if (hit) return;
      if (placed >= 4) {
        TaxonSet pre(order.begin(), order.begin() + placed);
        for (auto& t : trees)
          if (!multigraph_displays(m, restrict_to_taxa(t, pre))) return;
      }
      if (placed == n) {
        if (is_valid_unrooted(m) && reticulation_number(m) == k) hit = true;
        return;
      }
      for (int e = 0; e < m.num_edges() && !hit; ++e) {
        Network x = m;
        int w = x.subdivide(e);
        x.add_edge(w, x.add_node(order[placed]));
        grow(x, placed + 1);
      }
    };
    for (auto& [m, c] : start) grow(m, c);
    if (hit) return k;
  }
  return std::nullopt;
}

}  // namespace phylonet
