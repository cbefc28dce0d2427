#include "phylonet/core.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

namespace phylonet {

int Network::add_node(const Taxon& label) {
  labels.push_back(label);
  return int(labels.size()) - 1;
}

int Network::add_edge(int u, int v) {
  edges.push_back({u, v});
  return int(edges.size()) - 1;
}

std::vector<std::vector<int>> Network::incidence() const {
  std::vector<std::vector<int>> inc(labels.size());
  for (int e = 0; e < num_edges(); ++e) {
    inc[edges[e].u].push_back(e);
    inc[edges[e].v].push_back(e);
  }
  return inc;
}

std::vector<int> Network::degrees() const {
  std::vector<int> d(labels.size(), 0);
  for (auto& e : edges) ++d[e.u], ++d[e.v];
  return d;
}

std::vector<int> Network::indegrees() const {
  std::vector<int> d(labels.size(), 0);
  for (auto& e : edges) ++d[e.v];
  return d;
}

std::vector<int> Network::outdegrees() const {
  std::vector<int> d(labels.size(), 0);
  for (auto& e : edges) ++d[e.u];
  return d;
}

TaxonSet Network::taxa() const {
  TaxonSet s;
  for (auto& l : labels)
    if (!l.empty()) s.insert(l);
  return s;
}

std::map<Taxon, int> Network::leaf_of() const {
  std::map<Taxon, int> m;
  for (int v = 0; v < num_nodes(); ++v)
    if (!labels[v].empty()) m[labels[v]] = v;
  return m;
}

int Network::root() const {
  if (!rooted) return -1;
  auto in = indegrees();
  int r = -1;
  for (int v = 0; v < num_nodes(); ++v)
    if (in[v] == 0) {
      if (r != -1) return -1;
      r = v;
    }
  return r;
}

bool Network::connected() const {
  if (labels.empty()) return true;
  auto inc = incidence();
  std::vector<char> seen(labels.size(), 0);
  std::vector<int> st{0};
  seen[0] = 1;
  int cnt = 1;
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    for (int e : inc[x]) {
      int y = other(e, x);
      if (!seen[y]) seen[y] = 1, ++cnt, st.push_back(y);
    }
  }
  return cnt == num_nodes();
}

Network Network::without(const std::vector<char>& drop_node, const std::vector<char>& drop_edge,
                         std::vector<int>* node_map, std::vector<int>* edge_map) const {
  Network out;
  out.rooted = rooted;
  std::vector<int> nm(labels.size(), -1);
  for (int v = 0; v < num_nodes(); ++v)
    if (drop_node.empty() || !drop_node[v]) nm[v] = out.add_node(labels[v]);
  std::vector<int> em(edges.size(), -1);
  for (int e = 0; e < num_edges(); ++e) {
    if (!drop_edge.empty() && drop_edge[e]) continue;
    int a = nm[edges[e].u], b = nm[edges[e].v];
    if (a < 0 || b < 0) continue;
    em[e] = out.add_edge(a, b);
  }
  if (node_map) *node_map = nm;
  if (edge_map) *edge_map = em;
  return out;
}

Network Network::without_edges(const std::vector<int>& es) const {
  std::vector<char> de(edges.size(), 0);
  for (int e : es) de[e] = 1;
  return without({}, de);
}

int Network::subdivide(int e) {
  int w = add_node();
  int v = edges[e].v;
  edges[e].v = w;
  add_edge(w, v);
  return w;
}

int reticulation_number(const Network& n) {
  if (n.rooted) {
    int r = 0;
    for (int d : n.indegrees()) r += std::max(0, d - 1);
    return r;
  }
  return n.num_edges() - (n.num_nodes() - 1);
}

namespace {

std::pair<int, int> edge_key(bool rooted, int u, int v) {
  if (!rooted && v < u) std::swap(u, v);
  return {u, v};
}

bool has_multi(const Network& n) {
  std::set<std::pair<int, int>> seen;
  for (auto& e : n.edges) {
    if (e.u == e.v) return true;
    auto k = edge_key(n.rooted, e.u, e.v);
    if (!seen.insert(k).second) return true;
  }
  return false;
}

void check_labels(const Network& n) {
  TaxonSet s;
  for (auto& l : n.labels)
    if (!l.empty() && !s.insert(l).second) throw Error("duplicate taxon '" + l + "'");
}

}  // namespace

void validate_unrooted(const Network& n, bool require_tree) {
  if (n.rooted) throw Error("expected an unrooted network");
  check_labels(n);
  if (n.num_nodes() == 0) throw Error("empty network");
  if (!n.connected()) throw Error("network is disconnected");
  if (has_multi(n)) throw Error("network has loops or parallel edges");
  auto d = n.degrees();
  if (n.num_nodes() == 1) {
    if (n.labels[0].empty()) throw Error("single unlabelled node");
    return;
  }
  for (int v = 0; v < n.num_nodes(); ++v) {
    if (!n.labels[v].empty() && d[v] != 1)
      throw Error("taxon '" + n.labels[v] + "' has degree " + std::to_string(d[v]));
    if (n.labels[v].empty() && d[v] != 3)
      throw Error("internal node " + std::to_string(v) + " has degree " + std::to_string(d[v]));
  }
  if (reticulation_number(n) < 0) throw Error("negative reticulation number");
  if (require_tree && reticulation_number(n) != 0) throw Error("expected a tree");
}

void validate_rooted(const Network& n, bool require_tree) {
  if (!n.rooted) throw Error("expected a rooted network");
  check_labels(n);
  if (n.num_nodes() == 0) throw Error("empty network");
  if (n.num_nodes() == 1) {
    if (n.labels[0].empty()) throw Error("single unlabelled node");
    return;
  }
  if (has_multi(n)) throw Error("network has parallel arcs or loops");
  if (topo_order(n).empty()) throw Error("network has a directed cycle");
  auto in = n.indegrees(), out = n.outdegrees();
  int roots = 0;
  for (int v = 0; v < n.num_nodes(); ++v) {
    bool lab = !n.labels[v].empty();
    if (in[v] == 0) {
      ++roots;
      if (out[v] != 2) throw Error("root must have outdegree 2");
      if (lab) throw Error("root cannot be a taxon");
    } else if (lab) {
      if (in[v] != 1 || out[v] != 0) throw Error("taxon '" + n.labels[v] + "' is not a leaf");
    } else if (!((in[v] == 1 && out[v] == 2) || (in[v] == 2 && out[v] == 1))) {
      throw Error("node " + std::to_string(v) + " has in/out degree " + std::to_string(in[v]) + "/" +
                  std::to_string(out[v]));
    }
  }
  if (roots != 1) throw Error("network must have exactly one root");
  if (require_tree && reticulation_number(n) != 0) throw Error("expected a tree");
}

bool is_valid_unrooted(const Network& n, bool require_tree) {
  try {
    validate_unrooted(n, require_tree);
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool is_valid_rooted(const Network& n, bool require_tree) {
  try {
    validate_rooted(n, require_tree);
    return true;
  } catch (const Error&) {
    return false;
  }
}

void reject_reserved_taxa(const TaxonSet& taxa) {
  for (auto& t : taxa)
    if (t.rfind(kReservedPrefix, 0) == 0) throw Error("taxon '" + t + "' uses the reserved prefix");
}

Network tidy(const Network& n, bool keep_multi) {
  const int V = n.num_nodes();
  std::vector<Edge> E = n.edges;
  std::vector<char> ealive(E.size(), 1), nalive(V, 1);
  std::vector<std::vector<int>> inc(V);
  for (int e = 0; e < int(E.size()); ++e) {
    inc[E[e].u].push_back(e);
    inc[E[e].v].push_back(e);
  }
  std::deque<int> work;
  std::vector<char> queued(V, 1);
  for (int v = 0; v < V; ++v) work.push_back(v);
  auto push = [&](int v) {
    if (nalive[v] && !queued[v]) queued[v] = 1, work.push_back(v);
  };
  auto kill_edge = [&](int e) {
    ealive[e] = 0;
    push(E[e].u);
    push(E[e].v);
  };
  auto add_edge = [&](int a, int b) {
    E.push_back({a, b});
    ealive.push_back(1);
    int id = int(E.size()) - 1;
    inc[a].push_back(id);
    inc[b].push_back(id);
    push(a);
    push(b);
  };
  auto live = [&](int v) {
    auto& l = inc[v];
    l.erase(std::remove_if(l.begin(), l.end(), [&](int e) { return !ealive[e]; }), l.end());
    return l;
  };

  while (!work.empty()) {
    int v = work.front();
    work.pop_front();
    queued[v] = 0;
    if (!nalive[v]) continue;
    auto l = live(v);
    if (!keep_multi) {
      bool changed = false;
      std::map<std::pair<int, int>, int> seen;
      for (int e : l) {
        if (!ealive[e]) continue;
        if (E[e].u == E[e].v) {
          kill_edge(e);
          changed = true;
          continue;
        }
        auto key = edge_key(n.rooted, E[e].u, E[e].v);
        auto [it, fresh] = seen.emplace(key, e);
        if (!fresh && it->second != e) kill_edge(e), changed = true;
      }
      if (changed) l = live(v);
    }
    if (!n.labels[v].empty()) continue;
    if (!n.rooted) {
      int d = int(l.size());
      if (d == 0) {
        nalive[v] = 0;
      } else if (d == 1) {
        kill_edge(l[0]);
        nalive[v] = 0;
      } else if (d == 2) {
        if (l[0] == l[1]) {  // bare loop
          kill_edge(l[0]);
          nalive[v] = 0;
        } else {
          int a = E[l[0]].u == v ? E[l[0]].v : E[l[0]].u;
          int b = E[l[1]].u == v ? E[l[1]].v : E[l[1]].u;
          kill_edge(l[0]);
          kill_edge(l[1]);
          nalive[v] = 0;
          add_edge(a, b);
        }
      }
    } else {
      std::vector<int> in, out;
      for (int e : l) (E[e].v == v ? in : out).push_back(e);
      if (out.empty()) {
        for (int e : in) kill_edge(e);
        nalive[v] = 0;
      } else if (in.size() == 1 && out.size() == 1) {
        int a = E[in[0]].u, b = E[out[0]].v;
        kill_edge(in[0]);
        kill_edge(out[0]);
        nalive[v] = 0;
        add_edge(a, b);
      } else if (in.empty() && out.size() == 1) {
        kill_edge(out[0]);
        nalive[v] = 0;
      }
    }
  }

  Network out;
  out.rooted = n.rooted;
  std::vector<int> nm(V, -1);
  for (int v = 0; v < V; ++v)
    if (nalive[v]) nm[v] = out.add_node(n.labels[v]);
  for (int e = 0; e < int(E.size()); ++e)
    if (ealive[e]) out.add_edge(nm[E[e].u], nm[E[e].v]);
  return out;
}

bool drop_taxon_free_components(Network& n) {
  auto inc = n.incidence();
  std::vector<int> comp(n.num_nodes(), -1);
  int c = 0;
  for (int s = 0; s < n.num_nodes(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> st{s};
    comp[s] = c;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int e : inc[x]) {
        int y = n.other(e, x);
        if (comp[y] < 0) comp[y] = c, st.push_back(y);
      }
    }
    ++c;
  }
  std::vector<char> has(c, 0);
  for (int v = 0; v < n.num_nodes(); ++v)
    if (!n.labels[v].empty()) has[comp[v]] = 1;
  int with = int(std::count(has.begin(), has.end(), 1));
  if (with < c) {
    std::vector<char> drop(n.num_nodes(), 0);
    for (int v = 0; v < n.num_nodes(); ++v) drop[v] = !has[comp[v]];
    n = n.without(drop, {});
  }
  return with <= 1;
}

Network delete_taxa(const Network& n, const TaxonSet& s) {
  Network m = n;
  for (auto& l : m.labels)
    if (s.count(l)) l.clear();
  return tidy(m);
}

Network restrict_to_taxa(const Network& t, const TaxonSet& s) {
  if (s.empty()) throw Error("restriction to an empty taxon set");
  auto have = t.taxa();
  for (auto& x : s)
    if (!have.count(x)) throw Error("unknown taxon '" + x + "'");
  Network m = t;
  for (auto& l : m.labels)
    if (!l.empty() && !s.count(l)) l.clear();
  return tidy(m);
}

Network restrict_rooted(const Network& t, const TaxonSet& s) { return restrict_to_taxa(t, s); }

std::string canonical_subtree(const Network& t, const std::vector<std::vector<int>>& inc, int node,
                              int parent_edge) {
  if (!t.labels[node].empty()) return t.labels[node];
  std::vector<std::string> parts;
  for (int e : inc[node]) {
    if (e == parent_edge) continue;
    if (t.rooted && t.edges[e].u != node) continue;
    parts.push_back(canonical_subtree(t, inc, t.other(e, node), e));
  }
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += parts[i];
  }
  return s + ")";
}

std::string canonical_rooted(const Network& t) {
  int r = t.root();
  if (r < 0) throw Error("rooted tree without a unique root");
  return canonical_subtree(t, t.incidence(), r, -1);
}

std::string canonical_unrooted(const Network& t) {
  if (t.rooted) throw Error("expected an unrooted tree");
  if (t.num_edges() != t.num_nodes() - 1) throw Error("canonical form needs a tree");
  if (t.num_nodes() == 1) return t.labels[0];
  auto inc = t.incidence();
  int best = -1;
  for (int v = 0; v < t.num_nodes(); ++v)
    if (!t.labels[v].empty() && (best < 0 || t.labels[v] < t.labels[best])) best = v;
  if (best < 0 || inc[best].size() != 1) throw Error("canonical form needs a labelled leaf");
  int e = inc[best][0];
  return t.labels[best] + "|" + canonical_subtree(t, inc, t.other(e, best), e);
}

bool labelled_isomorphic(const Network& a, const Network& b) {
  if (a.taxa() != b.taxa()) throw Error("taxon sets differ");
  if (a.rooted != b.rooted) throw Error("cannot compare rooted with unrooted");
  return a.rooted ? canonical_rooted(a) == canonical_rooted(b) : canonical_unrooted(a) == canonical_unrooted(b);
}

Network root_at_edge(const Network& t, int e) {
  if (t.rooted) throw Error("tree is already rooted");
  if (e < 0 || e >= t.num_edges()) throw Error("edge not in tree");
  Network u = t;
  int r = u.subdivide(e);
  auto inc = u.incidence();
  Network out;
  out.rooted = true;
  out.labels = u.labels;
  std::vector<char> seen(u.num_nodes(), 0);
  std::vector<int> st{r};
  seen[r] = 1;
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    for (int f : inc[x]) {
      int y = u.other(f, x);
      if (seen[y]) continue;
      seen[y] = 1;
      out.add_edge(x, y);
      st.push_back(y);
    }
  }
  return out;
}

Network unroot(const Network& t) {
  if (!t.rooted) throw Error("tree is not rooted");
  int r = t.root();
  if (r < 0) throw Error("rooted tree without a unique root");
  Network out;
  out.rooted = false;
  if (t.num_nodes() == 1) {
    out.labels = t.labels;
    return out;
  }
  std::vector<int> kids;
  std::vector<char> drop(t.num_nodes(), 0);
  drop[r] = 1;
  for (auto& e : t.edges)
    if (e.u == r) kids.push_back(e.v);
  Network m = t;
  m.rooted = false;
  std::vector<int> nm;
  out = m.without(drop, {}, &nm);
  if (kids.size() == 2) out.add_edge(nm[kids[0]], nm[kids[1]]);
  return tidy(out);
}

Network caterpillar(const std::vector<Taxon>& order) {
  Network t;
  int n = int(order.size());
  if (n < 2) throw Error("caterpillar needs at least 2 taxa");
  std::vector<int> leaf;
  for (auto& x : order) leaf.push_back(t.add_node(x));
  if (n == 2) {
    t.add_edge(leaf[0], leaf[1]);
    return t;
  }
  // path p_2 .. p_{n-1}
  std::vector<int> p(n, -1);
  for (int i = 1; i <= n - 2; ++i) p[i] = t.add_node();
  for (int i = 1; i < n - 2; ++i) t.add_edge(p[i], p[i + 1]);
  t.add_edge(p[1], leaf[0]);
  for (int i = 1; i <= n - 2; ++i) t.add_edge(p[i], leaf[i]);
  t.add_edge(p[n - 2], leaf[n - 1]);
  return t;
}

Network rooted_caterpillar(const std::vector<Taxon>& order) {
  Network t;
  t.rooted = true;
  int n = int(order.size());
  if (n < 1) throw Error("caterpillar needs a taxon");
  if (n == 1) {
    t.add_node(order[0]);
    return t;
  }
  int top = t.add_node();
  int cur = top;
  for (int i = 0; i < n - 2; ++i) {
    int x = t.add_node(order[i]);
    int nx = t.add_node();
    t.add_edge(cur, x);
    t.add_edge(cur, nx);
    cur = nx;
  }
  t.add_edge(cur, t.add_node(order[n - 2]));
  t.add_edge(cur, t.add_node(order[n - 1]));
  return t;
}

Image make_image(const Network& host, std::vector<int> edges) {
  Image img;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::set<int> nodes;
  for (int e : edges) nodes.insert(host.edges[e].u), nodes.insert(host.edges[e].v);
  if (edges.empty() && host.num_nodes() == 1) nodes.insert(0);
  img.edges = edges;
  img.nodes.assign(nodes.begin(), nodes.end());
  for (int v : img.nodes)
    if (!host.labels[v].empty()) img.leaf_map[host.labels[v]] = v;
  return img;
}

Network image_subgraph(const Network& host, const Image& img, bool tidy_it) {
  std::vector<char> de(host.num_edges(), 1);
  for (int e : img.edges) de[e] = 0;
  std::vector<char> dn(host.num_nodes(), 1);
  for (int v : img.nodes) dn[v] = 0;
  Network sub = host.without(dn, de);
  return tidy_it ? tidy(sub) : sub;
}

std::vector<std::pair<Taxon, Taxon>> cherries(const Network& t) {
  std::vector<std::pair<Taxon, Taxon>> out;
  auto inc = t.incidence();
  for (int v = 0; v < t.num_nodes(); ++v) {
    if (!t.labels[v].empty()) continue;
    std::vector<Taxon> leaves;
    for (int e : inc[v]) {
      if (t.rooted && t.edges[e].u != v) continue;
      int y = t.other(e, v);
      if (!t.labels[y].empty()) leaves.push_back(t.labels[y]);
    }
    std::sort(leaves.begin(), leaves.end());
    for (size_t i = 0; i < leaves.size(); ++i)
      for (size_t j = i + 1; j < leaves.size(); ++j) out.push_back({leaves[i], leaves[j]});
  }
  if (!t.rooted && t.num_nodes() == 2 && t.num_edges() == 1)
    out.push_back(std::minmax(t.labels[0], t.labels[1]));
  std::sort(out.begin(), out.end());
  return out;
}

TaxonSet split_side(const Network& t, int e) {
  auto inc = t.incidence();
  TaxonSet s;
  std::vector<char> seen(t.num_nodes(), 0);
  std::vector<int> st{t.edges[e].v};
  seen[t.edges[e].v] = 1;
  seen[t.edges[e].u] = 1;
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    if (!t.labels[x].empty()) s.insert(t.labels[x]);
    for (int f : inc[x]) {
      if (f == e) continue;
      if (t.rooted && t.edges[f].u != x) continue;
      int y = t.other(f, x);
      if (!seen[y]) seen[y] = 1, st.push_back(y);
    }
  }
  return s;
}

std::string describe_split(const Network& t, int e) {
  TaxonSet a = split_side(t, e), all = t.taxa(), b;
  for (auto& x : all)
    if (!a.count(x)) b.insert(x);
  if (!b.empty() && (a.empty() || *b.begin() < *a.begin())) std::swap(a, b);
  auto join = [](const TaxonSet& s) {
    std::string r;
    for (auto& x : s) r += (r.empty() ? "" : ",") + x;
    return r;
  };
  return join(a) + " | " + join(b);
}

std::vector<int> topo_order(const Network& n) {
  auto in = n.indegrees();
  auto inc = n.incidence();
  std::vector<int> order, st;
  for (int v = 0; v < n.num_nodes(); ++v)
    if (in[v] == 0) st.push_back(v);
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    order.push_back(x);
    for (int e : inc[x])
      if (n.edges[e].u == x && --in[n.edges[e].v] == 0) st.push_back(n.edges[e].v);
  }
  if (int(order.size()) != n.num_nodes()) return {};
  return order;
}

std::vector<char> bridges(const Network& n) {
  auto inc = n.incidence();
  int V = n.num_nodes();
  std::vector<int> disc(V, -1), low(V, 0);
  std::vector<char> br(n.num_edges(), 0);
  int timer = 0;
  // iterative DFS keyed on the entering edge id so parallel edges are handled
  struct Frame {
    int v, in_edge;
    size_t i;
  };
  for (int s = 0; s < V; ++s) {
    if (disc[s] >= 0) continue;
    std::vector<Frame> st{{s, -1, 0}};
    disc[s] = low[s] = timer++;
    while (!st.empty()) {
      auto& f = st.back();
      if (f.i < inc[f.v].size()) {
        int e = inc[f.v][f.i++];
        if (e == f.in_edge) continue;
        int w = n.other(e, f.v);
        if (disc[w] < 0) {
          disc[w] = low[w] = timer++;
          st.push_back({w, e, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        Frame done = f;
        st.pop_back();
        if (!st.empty()) {
          int p = st.back().v;
          low[p] = std::min(low[p], low[done.v]);
          if (low[done.v] > disc[p]) br[done.in_edge] = 1;
        }
      }
    }
  }
  return br;
}

std::vector<char> reach_without(const Network& n, const std::vector<std::vector<int>>& inc, int start, int skip) {
  std::vector<char> seen(n.num_nodes(), 0);
  std::vector<int> st{start};
  seen[start] = 1;
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    for (int e : inc[x]) {
      if (e == skip) continue;
      int y = n.other(e, x);
      if (!seen[y]) seen[y] = 1, st.push_back(y);
    }
  }
  return seen;
}

}  // namespace phylonet
