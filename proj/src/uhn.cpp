#include "phylonet/uhn.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "phylonet/utc.hpp"

namespace phylonet {

namespace {

void check_pair(const Network& t1, const Network& t2) {
  validate_unrooted(t1, true);
  validate_unrooted(t2, true);
  if (t1.taxa() != t2.taxa()) throw Error("trees have different taxa");
}

void check_partition(const Network& t, const std::vector<TaxonSet>& blocks) {
  TaxonSet seen;
  for (auto& b : blocks) {
    if (b.empty()) throw Error("empty block");
    for (auto& x : b)
      if (!seen.insert(x).second) throw Error("taxon " + x + " in two blocks");
  }
  if (seen != t.taxa()) throw Error("blocks do not partition the taxa");
}

std::string restricted_canon(const Network& t, const TaxonSet& s) {
  if (s.size() <= 3) return {};  // all trees on <= 3 taxa agree
  return canonical_unrooted(restrict_to_taxa(t, s));
}

// split of `s` induced by removing edge e from the subgraph `edges` of n:
// taxa of s reachable from edges[e].v
TaxonSet edge_split(const Network& n, const std::vector<std::vector<int>>& sub_inc, int e) {
  TaxonSet out;
  std::vector<char> seen(n.num_nodes(), 0);
  std::vector<int> st{n.edges[e].v};
  seen[n.edges[e].v] = seen[n.edges[e].u] = 1;
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    if (!n.labels[x].empty()) out.insert(n.labels[x]);
    for (int f : sub_inc[x]) {
      if (f == e) continue;
      int y = n.other(f, x);
      if (!seen[y]) seen[y] = 1, st.push_back(y);
    }
  }
  return out;
}

}  // namespace

std::string AgreementForest::str() const {
  std::string s;
  for (auto& b : blocks) {
    std::string line;
    for (auto& x : b) line += (line.empty() ? "" : ",") + x;
    s += line + "\n";
  }
  return s;
}

std::vector<char> spanning_nodes(const Network& t, const TaxonSet& s) {
  auto inc = t.incidence();
  std::vector<int> deg(t.num_nodes());
  std::vector<char> in(t.num_nodes(), 1);
  for (int v = 0; v < t.num_nodes(); ++v) deg[v] = int(inc[v].size());
  std::vector<int> st;
  auto strippable = [&](int v) { return deg[v] <= 1 && !(s.count(t.labels[v]) && !t.labels[v].empty()); };
  for (int v = 0; v < t.num_nodes(); ++v)
    if (strippable(v)) st.push_back(v);
  while (!st.empty()) {
    int v = st.back();
    st.pop_back();
    if (!in[v]) continue;
    in[v] = 0;
    for (int e : inc[v]) {
      int w = t.other(e, v);
      if (in[w] && --deg[w] <= 1 && strippable(w)) st.push_back(w);
    }
  }
  return in;
}

bool is_agreement_forest(const Network& t1, const Network& t2, const std::vector<TaxonSet>& blocks) {
  check_pair(t1, t2);
  check_partition(t1, blocks);
  for (auto& b : blocks)
    if (restricted_canon(t1, b) != restricted_canon(t2, b)) return false;
  for (const Network* t : {&t1, &t2}) {
    std::vector<int> owner(t->num_nodes(), -1);
    for (size_t i = 0; i < blocks.size(); ++i) {
      auto in = spanning_nodes(*t, blocks[i]);
      for (int v = 0; v < t->num_nodes(); ++v)
        if (in[v]) {
          if (owner[v] >= 0) return false;
          owner[v] = int(i);
        }
    }
  }
  return true;
}

AgreementForest maf_exact(const Network& t1, const Network& t2, bool bounded, const Guards& g) {
  check_pair(t1, t2);
  int n = int(t1.taxa().size());
  if (n > g.maf_taxa && !bounded)
    throw GuardExceeded("maf_exact: " + std::to_string(n) + " taxa exceeds guard " + std::to_string(g.maf_taxa));
  // taxa in leaf order of T1 so that blocks grow along the tree
  std::vector<Taxon> order;
  {
    auto inc = t1.incidence();
    int start = t1.leaf_of().begin()->second;
    std::vector<char> seen(t1.num_nodes(), 0);
    std::function<void(int)> dfs = [&](int v) {
      seen[v] = 1;
      if (!t1.labels[v].empty()) order.push_back(t1.labels[v]);
      std::vector<int> next;
      for (int e : inc[v])
        if (!seen[t1.other(e, v)]) next.push_back(t1.other(e, v));
      for (int w : next) dfs(w);
    };
    dfs(start);
  }
  for (int k = 1; k <= n; ++k) {
    std::vector<TaxonSet> blocks;
    std::vector<int> own1(t1.num_nodes(), -1), own2(t2.num_nodes(), -1);
    std::function<bool(int)> place = [&](int i) -> bool {
      if (i == n) return true;
      const Taxon& x = order[i];
      int nb = int(blocks.size());
      for (int b = 0; b <= nb && b < k; ++b) {
        if (b == nb) blocks.emplace_back();
        TaxonSet cand = blocks[b];
        cand.insert(x);
        bool ok = restricted_canon(t1, cand) == restricted_canon(t2, cand);
        std::vector<int> save1 = own1, save2 = own2;
        for (auto [t, own] : {std::pair{&t1, &own1}, std::pair{&t2, &own2}}) {
          if (!ok) break;
          auto in = spanning_nodes(*t, cand);
          for (int v = 0; v < t->num_nodes() && ok; ++v)
            if (in[v]) {
              if ((*own)[v] >= 0 && (*own)[v] != b) ok = false;
              else (*own)[v] = b;
            }
        }
        if (ok) {
          blocks[b] = cand;
          if (place(i + 1)) return true;
          blocks[b].erase(x);
        }
        own1 = save1, own2 = save2;
        if (b == nb) blocks.pop_back();
      }
      return false;
    };
    if (place(0)) {
      AgreementForest f{blocks};
      std::sort(f.blocks.begin(), f.blocks.end(), [](auto& a, auto& b) { return *a.begin() < *b.begin(); });
      return f;
    }
  }
  throw Error("no agreement forest found");
}

std::vector<Network> tbr_neighbours(const Network& t) {
  std::vector<Network> out;
  auto all = t.taxa();
  for (int e = 0; e < t.num_edges(); ++e) {
    TaxonSet a = split_side(t, e), b;
    for (auto& x : all)
      if (!a.count(x)) b.insert(x);
    Network ta = restrict_to_taxa(t, a), tb = restrict_to_taxa(t, b);
    int na = std::max(1, ta.num_edges()), nbn = std::max(1, tb.num_edges());
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nbn; ++j) {
        Network m = ta;
        int wa = ta.num_edges() ? m.subdivide(i) : 0;
        int off = m.num_nodes();
        for (auto& l : tb.labels) m.add_node(l);
        for (auto& f : tb.edges) m.add_edge(f.u + off, f.v + off);
        int wb;
        if (tb.num_edges()) {
          wb = m.subdivide(m.num_edges() - tb.num_edges() + j);
        } else {
          wb = off;
        }
        m.add_edge(wa, wb);
        out.push_back(tidy(m));
      }
  }
  return out;
}

int tbr_bfs_oracle(const Network& t1, const Network& t2, const Guards& g) {
  check_pair(t1, t2);
  int n = int(t1.taxa().size());
  if (n > g.tbr_taxa)
    throw GuardExceeded("tbr_bfs_oracle: " + std::to_string(n) + " taxa exceeds guard " + std::to_string(g.tbr_taxa));
  std::string goal = canonical_unrooted(t2);
  std::unordered_map<std::string, int> dist;
  std::deque<Network> q{t1};
  dist[canonical_unrooted(t1)] = 0;
  while (!q.empty()) {
    Network cur = q.front();
    q.pop_front();
    std::string c = canonical_unrooted(cur);
    int d = dist[c];
    if (c == goal) return d;
    for (auto& nb : tbr_neighbours(cur)) {
      auto key = canonical_unrooted(nb);
      if (dist.emplace(key, d + 1).second) q.push_back(nb);
    }
  }
  throw Error("target tree unreachable");
}

UhnNetwork network_from_forest(const Network& t1, const Network& t2, const AgreementForest& f) {
  check_pair(t1, t2);
  if (!is_agreement_forest(t1, t2, f.blocks)) throw Error("not an agreement forest");
  if (f.blocks.size() > 1 && t1.taxa().size() < 3) throw Error("forest with several blocks needs at least 3 taxa");

  // elimination order: repeatedly peel the pendant component with the smallest minimum taxon
  struct Wiring {
    int block;
    TaxonSet own_side;    // split of the block at its wiring edge (empty: taxon wiring)
    TaxonSet rest_side;   // split of the remaining taxa at theirs (empty: taxon wiring)
  };
  std::vector<Wiring> order;
  std::vector<int> remaining(f.blocks.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  while (remaining.size() > 1) {
    TaxonSet xs;
    for (int b : remaining) xs.insert(f.blocks[b].begin(), f.blocks[b].end());
    Network t2r = restrict_to_taxa(t2, xs);
    auto inc = t2r.incidence();
    int pick = -1;
    Wiring w{};
    for (int b : remaining) {
      const TaxonSet& fb = f.blocks[b];
      for (int e = 0; e < t2r.num_edges() && pick < 0; ++e) {
        for (int side : {t2r.edges[e].u, t2r.edges[e].v}) {
          auto in = reach_without(t2r, inc, side, e);
          TaxonSet tx;
          for (int v = 0; v < t2r.num_nodes(); ++v)
            if (in[v] && !t2r.labels[v].empty()) tx.insert(t2r.labels[v]);
          if (tx != fb) continue;
          int u = side, v = t2r.other(e, side);
          w.block = b;
          auto split_at = [&](int node, int skip) {
            TaxonSet s;
            if (!t2r.labels[node].empty()) return s;
            for (int g2 : inc[node])
              if (g2 != skip) {
                s = edge_split(t2r, inc, g2);
                if (t2r.edges[g2].u != node) {
                  // edge_split follows edges[g2].v; flip to the far side of node
                  auto in2 = reach_without(t2r, inc, t2r.other(g2, node), g2);
                  s.clear();
                  for (int y = 0; y < t2r.num_nodes(); ++y)
                    if (in2[y] && !t2r.labels[y].empty()) s.insert(t2r.labels[y]);
                }
                break;
              }
            return s;
          };
          w.own_side = split_at(u, e);
          w.rest_side = split_at(v, e);
          pick = b;
          break;
        }
      }
      if (pick >= 0) break;
    }
    if (pick < 0) throw Error("no pendant component in the forest");
    order.push_back(w);
    remaining.erase(std::find(remaining.begin(), remaining.end(), pick));
  }

  UhnNetwork res;
  Network& n = res.net;
  n = t1;
  // images of each block inside T1, tracked through subdivisions
  std::vector<std::set<int>> img(f.blocks.size());
  for (size_t b = 0; b < f.blocks.size(); ++b) {
    auto in = spanning_nodes(t1, f.blocks[b]);
    for (int e = 0; e < t1.num_edges(); ++e)
      if (in[t1.edges[e].u] && in[t1.edges[e].v]) img[b].insert(e);
  }
  std::set<int> grown = img[remaining[0]];
  TaxonSet grown_taxa = f.blocks[remaining[0]];
  std::set<int> wiring_edges;

  auto subdivide_tracked = [&](int e, const Taxon& leaf_side, std::set<int>& target) {
    int w = n.subdivide(e);
    int e2 = n.num_edges() - 1;
    for (auto* s : {&grown, &wiring_edges})
      if (s->count(e)) s->insert(e2);
    for (auto& s : img)
      if (s.count(e)) s.insert(e2);
    if (!leaf_side.empty()) {
      // leaf edge: only the piece touching the taxon joins the image
      auto lf = n.leaf_of();
      int x = lf.at(leaf_side);
      target.insert(n.edges[e].u == x || n.edges[e].v == x ? e : e2);
    }
    return w;
  };
  // choose the path edge for a split inside an image, nearest the smallest taxon
  auto wiring_edge = [&](const std::set<int>& es, const TaxonSet& taxa, const TaxonSet& side) {
    std::vector<std::vector<int>> sub(n.num_nodes());
    for (int e : es) sub[n.edges[e].u].push_back(e), sub[n.edges[e].v].push_back(e);
    TaxonSet other;
    for (auto& x : taxa)
      if (!side.count(x)) other.insert(x);
    std::vector<int> path;
    for (int e : es) {
      auto s = edge_split(n, sub, e);
      if (s == side || s == other) path.push_back(e);
    }
    if (path.empty()) throw Error("wiring edge not found in image");
    int src = n.leaf_of().at(*taxa.begin());
    std::vector<int> dist(n.num_nodes(), -1);
    std::deque<int> q{src};
    dist[src] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int e : sub[x]) {
        int y = n.other(e, x);
        if (dist[y] < 0) dist[y] = dist[x] + 1, q.push_back(y);
      }
    }
    int best = path[0];
    auto key = [&](int e) { return std::min(dist[n.edges[e].u], dist[n.edges[e].v]); };
    for (int e : path)
      if (key(e) < key(best)) best = e;
    return best;
  };
  auto leaf_edge = [&](const Taxon& x) {
    int v = n.leaf_of().at(x);
    for (int e = 0; e < n.num_edges(); ++e)
      if (n.edges[e].u == v || n.edges[e].v == v) return e;
    return -1;
  };

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const TaxonSet& fb = f.blocks[it->block];
    std::set<int>& own = img[it->block];
    int w1, w2;
    if (it->own_side.empty()) w1 = subdivide_tracked(leaf_edge(*fb.begin()), *fb.begin(), own);
    else w1 = subdivide_tracked(wiring_edge(own, fb, it->own_side), "", own);
    if (it->rest_side.empty()) w2 = subdivide_tracked(leaf_edge(*grown_taxa.begin()), *grown_taxa.begin(), grown);
    else w2 = subdivide_tracked(wiring_edge(grown, grown_taxa, it->rest_side), "", grown);
    int ne = n.add_edge(w1, w2);
    wiring_edges.insert(ne);
    grown.insert(own.begin(), own.end());
    grown.insert(ne);
    grown_taxa.insert(fb.begin(), fb.end());
  }
  std::vector<int> all1;
  for (int e = 0; e < n.num_edges(); ++e)
    if (!wiring_edges.count(e)) all1.push_back(e);
  res.img1 = make_image(n, all1);
  res.img2 = make_image(n, std::vector<int>(grown.begin(), grown.end()));
  validate_unrooted(n);
  if (reticulation_number(n) != int(f.blocks.size()) - 1) throw Error("wiring produced the wrong reticulation number");
  if (!image_matches(n, res.img1, t1) || !image_matches(n, res.img2, t2))
    throw Error("wired network does not display both trees");
  return res;
}

AgreementForest forest_from_network(const Network& n, const Image& img1, const Image& img2) {
  std::vector<int> parent(n.num_nodes());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> span(n.num_edges(), 0);
  auto add = [&](int e) {
    int a = find(n.edges[e].u), b = find(n.edges[e].v);
    if (a == b) return;
    parent[a] = b;
    span[e] = 1;
  };
  for (int e : img1.edges) add(e);
  for (int e = 0; e < n.num_edges(); ++e) add(e);
  std::vector<std::vector<int>> sub(n.num_nodes());
  for (int e : img2.edges)
    if (span[e]) sub[n.edges[e].u].push_back(e), sub[n.edges[e].v].push_back(e);
  AgreementForest f;
  std::vector<char> seen(n.num_nodes(), 0);
  for (auto& [x, v] : img2.leaf_map) {
    if (seen[v]) continue;
    TaxonSet block;
    std::vector<int> st{v};
    seen[v] = 1;
    while (!st.empty()) {
      int a = st.back();
      st.pop_back();
      if (!n.labels[a].empty()) block.insert(n.labels[a]);
      for (int e : sub[a]) {
        int b = n.other(e, a);
        if (!seen[b]) seen[b] = 1, st.push_back(b);
      }
    }
    f.blocks.push_back(block);
  }
  std::sort(f.blocks.begin(), f.blocks.end(), [](auto& a, auto& b) { return *a.begin() < *b.begin(); });
  return f;
}

UhnSolution uhn_solve(const Network& t1, const Network& t2, const Guards& g) {
  auto f = maf_exact(t1, t2, true, g);
  UhnSolution s{int(f.blocks.size()) - 1, f, network_from_forest(t1, t2, f)};
  return s;
}

}  // namespace phylonet
