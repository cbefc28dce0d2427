#include "phylonet/utc.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "phylonet/reduce.hpp"

namespace phylonet {

namespace {

// minimal subtree of a rooted choice graph: kept edges with a taxon below,
// minus the single-child chain at the top
std::vector<int> rooted_image_edges(const Network& n, const std::vector<char>& dead) {
  auto inc = n.incidence();
  int r = n.root();
  std::vector<char> has(n.num_nodes(), 0), keep(n.num_edges(), 0);
  std::vector<int> order = topo_order(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (!n.labels[v].empty()) has[v] = 1;
    for (int e : inc[v])
      if (n.edges[e].u == v && !dead[e] && has[n.edges[e].v]) has[v] = 1, keep[e] = 1;
  }
  int top = r;
  while (true) {
    int cnt = 0, last = -1;
    for (int e : inc[top])
      if (n.edges[e].u == top && keep[e]) ++cnt, last = e;
    if (cnt != 1 || !n.labels[top].empty()) break;
    keep[last] = 0;
    top = n.edges[last].v;
  }
  std::vector<int> out;
  for (int e = 0; e < n.num_edges(); ++e)
    if (keep[e]) out.push_back(e);
  return out;
}

bool solve_rec(Network n, Network t) {
  if (!drop_taxon_free_components(n)) return false;
  n = tidy(n);
  if (t.taxa().size() <= 3) return true;
  int r = reticulation_number(n);
  if (r == 0) return canonical_unrooted(n) == canonical_unrooted(t);
  auto ch = cherries(t).front();
  auto leaf = n.leaf_of();
  auto inc = n.incidence();
  int lx = leaf.at(ch.first), ly = leaf.at(ch.second);
  int nx = n.other(inc[lx][0], lx), ny = n.other(inc[ly][0], ly);
  if (nx == ny) return solve_rec(delete_taxa(n, {ch.second}), delete_taxa(t, {ch.second}));
  std::vector<int> es;
  for (int e : inc[nx])
    if (e != inc[lx][0]) es.push_back(e);
  for (int e : inc[ny])
    if (e != inc[ly][0]) es.push_back(e);
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  for (int e : es) {
    Network m = n.without_edges({e});
    if (!drop_taxon_free_components(m)) continue;
    m = tidy(m);
    if (reticulation_number(m) >= r) throw Error("branching did not lower the reticulation number");
    if (solve_rec(m, t)) return true;
  }
  return false;
}

void check_instance(const Network& n, const Network& t) {
  validate_unrooted(n);
  validate_unrooted(t, true);
  if (n.taxa() != t.taxa()) throw Error("network and tree have different taxa");
}

}  // namespace

std::optional<Image> rooted_tc(const Network& n, const Network& t) {
  if (!n.rooted || !t.rooted) throw Error("rooted_tc needs rooted inputs");
  if (n.taxa() != t.taxa()) throw Error("network and tree have different taxa");
  if (t.num_nodes() == 1) {
    Image img;
    auto lf = n.leaf_of();
    img.nodes = {lf.begin()->second};
    img.leaf_map = lf;
    return img;
  }
  auto inc = n.incidence();
  std::vector<std::vector<int>> choices;
  for (int v = 0; v < n.num_nodes(); ++v) {
    std::vector<int> in;
    for (int e : inc[v])
      if (n.edges[e].v == v) in.push_back(e);
    if (in.size() >= 2) choices.push_back(in);
  }
  std::string want = canonical_rooted(t);
  std::vector<size_t> pick(choices.size(), 0);
  while (true) {
    std::vector<char> dead(n.num_edges(), 0);
    for (size_t i = 0; i < choices.size(); ++i)
      for (size_t j = 0; j < choices[i].size(); ++j)
        if (j != pick[i]) dead[choices[i][j]] = 1;
    auto edges = rooted_image_edges(n, dead);
    Image img = make_image(n, edges);
    if (img.leaf_map.size() == t.taxa().size()) {
      Network sub = image_subgraph(n, img);
      if (sub.root() >= 0 && canonical_rooted(sub) == want) return img;
    }
    size_t i = 0;
    for (; i < choices.size(); ++i) {
      if (++pick[i] < choices[i].size()) break;
      pick[i] = 0;
    }
    if (i == choices.size()) break;
  }
  return std::nullopt;
}

bool utc_solve(const Network& n, const Network& t, bool use_kernel) {
  check_instance(n, t);
  if (use_kernel) {
    auto k = kernelize_utc(n, t);
    if (k.decided) return *k.decided;
    return solve_rec(k.n, k.t);
  }
  return solve_rec(n, t);
}

std::optional<Image> utc_certificate(const Network& n, const Network& t) {
  check_instance(n, t);
  if (!solve_rec(n, t)) return std::nullopt;
  std::vector<int> del;
  auto remainder = [&](std::vector<int> d) -> std::optional<Network> {
    Network m = n.without_edges(d);
    if (!drop_taxon_free_components(m)) return std::nullopt;
    return tidy(m);
  };
  for (int e = 0; e < n.num_edges(); ++e) {
    auto d = del;
    d.push_back(e);
    auto m = remainder(d);
    if (!m) continue;
    if (t.taxa().size() <= 3 || solve_rec(*m, t)) del = d;
  }
  std::vector<char> gone(n.num_edges(), 0);
  for (int e : del) gone[e] = 1;
  std::vector<int> rest;
  for (int e = 0; e < n.num_edges(); ++e)
    if (!gone[e]) rest.push_back(e);
  Image img = make_image(n, taxon_spanning_edges(n, rest));
  if (!image_matches(n, img, t)) throw Error("certificate does not reproduce the tree");
  return img;
}

std::vector<int> taxon_spanning_edges(const Network& n, const std::vector<int>& tree_edges) {
  std::vector<int> deg(n.num_nodes(), 0);
  std::vector<std::vector<int>> inc(n.num_nodes());
  std::vector<char> alive(n.num_edges(), 0);
  for (int e : tree_edges) {
    alive[e] = 1;
    ++deg[n.edges[e].u], ++deg[n.edges[e].v];
    inc[n.edges[e].u].push_back(e);
    inc[n.edges[e].v].push_back(e);
  }
  std::vector<int> st;
  for (int v = 0; v < n.num_nodes(); ++v)
    if (deg[v] == 1 && n.labels[v].empty()) st.push_back(v);
  while (!st.empty()) {
    int v = st.back();
    st.pop_back();
    for (int e : inc[v]) {
      if (!alive[e]) continue;
      alive[e] = 0;
      int w = n.other(e, v);
      --deg[v];
      if (--deg[w] == 1 && n.labels[w].empty()) st.push_back(w);
    }
  }
  std::vector<int> out;
  for (int e : tree_edges)
    if (alive[e]) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

bool image_matches(const Network& host, const Image& img, const Network& guest) {
  if (img.leaf_map.size() != guest.taxa().size()) return false;
  Network sub = image_subgraph(host, img);
  if (sub.taxa() != guest.taxa()) return false;
  if (guest.num_nodes() == 1) return sub.num_nodes() == 1;
  if (guest.rooted) return sub.root() >= 0 && reticulation_number(sub) == 0 && canonical_rooted(sub) == canonical_rooted(guest);
  if (sub.num_edges() != sub.num_nodes() - 1 || !sub.connected()) return false;
  return canonical_unrooted(sub) == canonical_unrooted(guest);
}

std::optional<Image> utc_subset_oracle(const Network& n, const Network& t, const Guards& g) {
  check_instance(n, t);
  if (n.num_edges() > g.oracle_edges)
    throw GuardExceeded("utc_oracle: " + std::to_string(n.num_edges()) + " edges exceeds guard " +
                        std::to_string(g.oracle_edges));
  if (t.num_nodes() == 1) return make_image(n, {});
  int r = reticulation_number(n), m = n.num_edges();
  std::string want = canonical_unrooted(t);
  std::vector<int> comb(r);
  std::iota(comb.begin(), comb.end(), 0);
  std::vector<int> parent(n.num_nodes());
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  while (true) {
    std::vector<char> del(m, 0);
    for (int e : comb) del[e] = 1;
    std::iota(parent.begin(), parent.end(), 0);
    bool tree = true;
    std::vector<int> kept;
    for (int e = 0; e < m && tree; ++e) {
      if (del[e]) continue;
      int a = find(n.edges[e].u), b = find(n.edges[e].v);
      if (a == b) tree = false;
      parent[a] = b;
      kept.push_back(e);
    }
    if (tree) {
      Image img = make_image(n, taxon_spanning_edges(n, kept));
      Network sub = image_subgraph(n, img);
      if (sub.taxa().size() == t.taxa().size() && canonical_unrooted(sub) == want) return img;
    }
    // next combination of r edges
    int i = r - 1;
    while (i >= 0 && comb[i] == m - r + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
  }
  return std::nullopt;
}

namespace {

// taxa of t in depth-first leaf order from the smallest taxon
std::vector<Taxon> leaf_order(const Network& t) {
  auto inc = t.incidence();
  std::vector<Taxon> out;
  std::vector<char> seen(t.num_nodes(), 0);
  std::vector<int> st{t.leaf_of().begin()->second};
  while (!st.empty()) {
    int v = st.back();
    st.pop_back();
    if (seen[v]) continue;
    seen[v] = 1;
    if (!t.labels[v].empty()) out.push_back(t.labels[v]);
    for (auto it = inc[v].rbegin(); it != inc[v].rend(); ++it)
      if (!seen[t.other(*it, v)]) st.push_back(t.other(*it, v));
  }
  return out;
}

}  // namespace

std::optional<Image> utc_oracle(const Network& n, const Network& t, const Guards& g) {
  check_instance(n, t);
  if (n.num_edges() > g.oracle_edges)
    throw GuardExceeded("utc_oracle: " + std::to_string(n.num_edges()) + " edges exceeds guard " +
                        std::to_string(g.oracle_edges));
  if (t.num_nodes() == 1) return make_image(n, {});
  auto order = leaf_order(t);  // placed prefix, then the rest
  const size_t nt = order.size();
  auto leaf = n.leaf_of();
  auto inc = n.incidence();
  int V = n.num_nodes();

  // canonical form of t restricted to order[0..i) plus y
  std::map<TaxonSet, std::string> want;
  auto wanted = [&](size_t i, const Taxon& y) -> const std::string& {
    TaxonSet s(order.begin(), order.begin() + i);
    s.insert(y);
    auto it = want.find(s);
    if (it != want.end()) return it->second;
    return want[s] = canonical_unrooted(restrict_to_taxa(t, s));
  };

  std::vector<char> in_node(V, 0), on_path(V, 0);
  std::vector<int> deg_s(V, 0);
  std::vector<int> edges;
  std::optional<Image> found;

  // Nodes of the current subtree where taxon order[j] may hang, for j >= i.
  // A pendant path can only meet the subtree at an inner node of a segment
  // (degree 2 in the subtree); the segment must be the one T asks for.
  auto allowed_sets = [&](size_t i) {
    std::vector<std::vector<char>> out(nt, std::vector<char>());
    if (i == 1) {
      std::vector<char> a(V, 0);
      a[leaf.at(order[0])] = 1;
      for (size_t j = i; j < nt; ++j) out[j] = a;
      return out;
    }
    std::vector<std::vector<int>> sinc(V);
    for (int e : edges) sinc[n.edges[e].u].push_back(e), sinc[n.edges[e].v].push_back(e);
    Network ts;
    std::vector<int> id(V, -1);
    for (int v = 0; v < V; ++v)
      if (in_node[v] && deg_s[v] != 2) id[v] = ts.add_node(n.labels[v]);
    std::vector<std::vector<int>> inner;
    std::vector<char> used(n.num_edges(), 0);
    for (int v = 0; v < V; ++v) {
      if (id[v] < 0) continue;
      for (int e0 : sinc[v]) {
        if (used[e0]) continue;
        std::vector<int> mid;
        int x = v, e = e0;
        while (true) {
          used[e] = 1;
          x = n.other(e, x);
          if (id[x] >= 0) break;
          mid.push_back(x);
          e = sinc[x][0] == e ? sinc[x][1] : sinc[x][0];
        }
        ts.add_edge(id[v], id[x]);
        inner.push_back(mid);
      }
    }
    for (size_t j = i; j < nt; ++j) {
      out[j].assign(V, 0);
      const std::string& w = wanted(i, order[j]);
      for (int s = 0; s < ts.num_edges(); ++s) {
        if (inner[s].empty()) continue;
        Network m = ts;
        int mid = m.subdivide(s);
        m.add_edge(mid, m.add_node(order[j]));
        if (canonical_unrooted(m) != w) continue;
        for (int v : inner[s]) out[j][v] = 1;
      }
    }
    return out;
  };

  // Free nodes explored from leaf x before meeting an allowed node, or -1
  // when none is reachable.
  auto reaches = [&](int x, const std::vector<char>& ok) {
    std::vector<char> seen(V, 0);
    std::vector<int> st{x};
    seen[x] = 1;
    int count = 0, hit = 0;
    while (!st.empty()) {
      int v = st.back();
      st.pop_back();
      for (int e : inc[v]) {
        int y = n.other(e, v);
        if (ok[y]) hit = 1;
        if (seen[y] || in_node[y] || !n.labels[y].empty()) continue;
        seen[y] = 1;
        ++count;
        st.push_back(y);
      }
    }
    return hit ? count : -1;
  };

  std::function<bool(size_t)> place;
  std::function<bool(size_t, int, const std::vector<char>&)> walk = [&](size_t i, int x,
                                                                        const std::vector<char>& ok) {
    for (int e : inc[x]) {
      int y = n.other(e, x);
      if (on_path[y] || y == x) continue;
      if (ok[y]) {
        edges.push_back(e);
        std::vector<int> added;
        for (int v = 0; v < V; ++v)
          if (on_path[v]) added.push_back(v);
        for (int v : added) in_node[v] = 1, on_path[v] = 0;
        // degrees along the new path
        for (size_t k = edges.size() - added.size(); k < edges.size(); ++k)
          ++deg_s[n.edges[edges[k]].u], ++deg_s[n.edges[edges[k]].v];
        if (place(i + 1)) return true;
        for (size_t k = edges.size() - added.size(); k < edges.size(); ++k)
          --deg_s[n.edges[edges[k]].u], --deg_s[n.edges[edges[k]].v];
        for (int v : added) in_node[v] = 0, on_path[v] = 1;
        edges.pop_back();
        continue;
      }
      if (in_node[y] || !n.labels[y].empty()) continue;
      on_path[y] = 1;
      edges.push_back(e);
      if (walk(i, y, ok)) return true;
      edges.pop_back();
      on_path[y] = 0;
    }
    return false;
  };
  place = [&](size_t i) {
    if (i == nt) {
      found = make_image(n, edges);
      return true;
    }
    auto ok = allowed_sets(i);
    // next taxon: the one with the smallest free region (ties: leaf order)
    size_t best = i;
    int best_count = -1;
    for (size_t j = i; j < nt; ++j) {
      int c = reaches(leaf.at(order[j]), ok[j]);
      if (c < 0) return false;
      if (best_count < 0 || c < best_count) best = j, best_count = c;
    }
    std::swap(order[i], order[best]);
    std::swap(ok[i], ok[best]);
    int x = leaf.at(order[i]);
    on_path[x] = 1;
    bool done = walk(i, x, ok[i]);
    on_path[x] = 0;
    if (!done) std::swap(order[i], order[best]);
    return done;
  };
  in_node[leaf.at(order[0])] = 1;
  place(1);
  if (found && !image_matches(n, *found, t)) throw Error("utc_oracle: internal image mismatch");
  return found;
}

}  // namespace phylonet
