#include "phylonet/gadgets.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "phylonet/utc.hpp"

namespace phylonet {

int NdpInstance::node(const std::string& name) {
  auto it = std::find(nodes.begin(), nodes.end(), name);
  if (it != nodes.end()) return int(it - nodes.begin());
  nodes.push_back(name);
  return int(nodes.size()) - 1;
}

std::string NdpInstance::str() const {
  std::ostringstream os;
  os << "graph\n";
  std::vector<int> deg(nodes.size(), 0);
  for (auto [u, v] : edges) os << nodes[u] << " " << nodes[v] << "\n", ++deg[u], ++deg[v];
  for (size_t v = 0; v < nodes.size(); ++v)
    if (deg[v] == 0) os << "node " << nodes[v] << "\n";
  for (auto [s, t] : pairs) os << "pair " << nodes[s] << " " << nodes[t] << "\n";
  return os.str();
}

NdpInstance parse_ndp(const std::string& text) {
  NdpInstance I;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<std::string> w;
    for (std::string x; ls >> x;) w.push_back(x);
    if (w.empty() || (w.size() == 1 && w[0] == "graph")) continue;
    auto bad = [&] { throw Error("ndp line " + std::to_string(lineno) + ": cannot parse '" + line + "'"); };
    if (w[0] == "node") {
      if (w.size() != 2) bad();
      I.node(w[1]);
    } else if (w[0] == "pair") {
      if (w.size() != 3) bad();
      if (w[1] == w[2]) throw Error("ndp line " + std::to_string(lineno) + ": pair with equal terminals");
      int s = I.node(w[1]), t = I.node(w[2]);
      I.pairs.push_back({s, t});
    } else {
      if (w[0] == "edge") w.erase(w.begin());
      if (w.size() != 2) bad();
      int u = I.node(w[0]), v = I.node(w[1]);
      I.edges.push_back({u, v});
    }
  }
  return I;
}

std::optional<std::vector<std::vector<int>>> ndp_oracle(const NdpInstance& I) {
  int V = int(I.nodes.size()), E = int(I.edges.size());
  std::vector<std::vector<int>> inc(V);
  for (int e = 0; e < E; ++e) {
    inc[I.edges[e].first].push_back(e);
    if (I.edges[e].second != I.edges[e].first) inc[I.edges[e].second].push_back(e);
  }
  std::vector<char> terminal(V, 0), used_node(V, 0), used_edge(E, 0);
  for (auto [s, t] : I.pairs) {
    if (s == t) throw Error("ndp_oracle: pair with equal terminals");
    terminal[s] = terminal[t] = 1;
  }
  std::vector<std::vector<int>> paths(I.pairs.size());
  std::function<bool(size_t)> solve_from;
  std::function<bool(size_t, int, std::vector<int>&)> walk = [&](size_t i, int x, std::vector<int>& path) {
    int target = I.pairs[i].second;
    for (int e : inc[x]) {
      if (used_edge[e]) continue;
      int y = I.edges[e].first == x ? I.edges[e].second : I.edges[e].first;
      if (y == x) continue;
      if (y == target) {
        used_edge[e] = 1;
        path.push_back(y);
        paths[i] = path;
        if (solve_from(i + 1)) return true;
        path.pop_back();
        used_edge[e] = 0;
        continue;
      }
      if (terminal[y] || used_node[y]) continue;
      used_edge[e] = used_node[y] = 1;
      path.push_back(y);
      if (walk(i, y, path)) return true;
      path.pop_back();
      used_edge[e] = used_node[y] = 0;
    }
    return false;
  };
  solve_from = [&](size_t i) {
    if (i == I.pairs.size()) return true;
    std::vector<int> path{I.pairs[i].first};
    return walk(i, I.pairs[i].first, path);
  };
  if (solve_from(0)) return paths;
  return std::nullopt;
}

namespace {

const std::map<std::string, std::string>& templates() {
  static const std::map<std::string, std::string> t = {
      {"cap",
       "# cap: K4 on a b c d with edge a-b subdivided by w; w hangs from the port\n"
       "edge a w\nedge w b\nedge a c\nedge a d\nedge b c\nedge b d\nedge c d\nport w\n"},
      {"1pair",
       "# terminal s in one pair; s keeps degree 3 and stops being a terminal\n"
       "sub up G\nsub left A\nsub right B R\n"
       "edge G Q\nedge Q R\n"
       "edge A C\nedge B D\nedge C E\nedge D F\nedge D E\nedge C F\n"
       "leaf E 0\nnewpair F Q\n"},
      {"2pair",
       "# terminal s in two pairs; s keeps its up edge\n"
       "sub left A\nsub right B\n"
       "edge A C\nedge B D\nedge C E\nedge D F\nedge D E\nedge C F\n"
       "leaf E 0\nleaf F 1\n"},
      {"3pair",
       "# terminal s in three pairs\n"
       "sub up G\nsub left A\nsub right B\n"
       "edge A C\nedge B D\nedge C E\nedge D F\nedge D E\nedge C F\n"
       "edge F H\nedge G I\nedge H J\nedge I K\nedge H K\nedge I J\n"
       "edge K L\nedge E M\nedge L O\nedge M P\nedge M O\nedge L P\n"
       "leaf P 0\nleaf O 1\nleaf J 2\n"},
  };
  return t;
}

// Working multigraph with deletable edges.
struct Work {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> edges;
  std::vector<char> alive;
  std::vector<std::pair<int, int>> pairs;

  int add_node(const std::string& want) {
    std::string name = want;
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "'";
    names.push_back(name);
    return int(names.size()) - 1;
  }
  int add_edge(int u, int v) {
    edges.push_back({u, v});
    alive.push_back(1);
    return int(edges.size()) - 1;
  }
  std::vector<int> incident(int x) const {
    std::vector<int> out;
    for (int e = 0; e < int(edges.size()); ++e)
      if (alive[e] && (edges[e].first == x || edges[e].second == x)) out.push_back(e);
    return out;
  }
  int degree(int x) const {
    int d = 0;
    for (int e = 0; e < int(edges.size()); ++e)
      if (alive[e]) d += (edges[e].first == x) + (edges[e].second == x);
    return d;
  }
  int far(int e, int x) const { return edges[e].first == x ? edges[e].second : edges[e].first; }
  std::vector<int> pair_count() const {
    std::vector<int> c(names.size(), 0);
    for (auto [s, t] : pairs) ++c[s], ++c[t];
    return c;
  }
  // replace edge e = (x, y) by x - chain[0] - ... - chain.back() - y
  void subdivide_from(int e, int x, const std::vector<int>& chain) {
    int y = far(e, x);
    alive[e] = 0;
    int prev = x;
    for (int c : chain) add_edge(prev, c), prev = c;
    add_edge(prev, y);
  }
};

void clean_nonterminals(Work& w) {
  for (bool changed = true; changed;) {
    changed = false;
    for (int e = 0; e < int(w.edges.size()); ++e)
      if (w.alive[e] && w.edges[e].first == w.edges[e].second) w.alive[e] = 0, changed = true;
    auto cnt = w.pair_count();
    for (int x = 0; x < int(w.names.size()); ++x) {
      if (cnt[x]) continue;
      auto inc = w.incident(x);
      for (int e : inc)
        if (w.edges[e].first == w.edges[e].second) w.alive[e] = 0, changed = true;
      if (changed) inc = w.incident(x);
      if (inc.size() == 1) {
        w.alive[inc[0]] = 0;
        changed = true;
      } else if (inc.size() == 2) {
        int a = w.far(inc[0], x), b = w.far(inc[1], x);
        w.alive[inc[0]] = w.alive[inc[1]] = 0;
        w.add_edge(a, b);
        changed = true;
      }
    }
  }
}

struct Template {
  std::vector<std::pair<std::string, std::vector<std::string>>> subs;  // port, chain
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::pair<std::string, int>> leaves;
  std::vector<std::pair<std::string, std::string>> newpairs;
  std::string port;
};

Template parse_template(const std::string& text) {
  Template t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<std::string> w;
    for (std::string x; ls >> x;) w.push_back(x);
    if (w.empty()) continue;
    if (w[0] == "sub") t.subs.push_back({w[1], std::vector<std::string>(w.begin() + 2, w.end())});
    else if (w[0] == "edge") t.edges.push_back({w[1], w[2]});
    else if (w[0] == "leaf") t.leaves.push_back({w[1], std::stoi(w[2])});
    else if (w[0] == "newpair") t.newpairs.push_back({w[1], w[2]});
    else if (w[0] == "port") t.port = w[1];
    else throw Error("bad gadget template line: " + line);
  }
  return t;
}

// template node name -> work node id, created on demand
struct Instantiation {
  Work& w;
  std::string prefix;
  std::map<std::string, int> ids;
  int get(const std::string& n) {
    auto it = ids.find(n);
    if (it != ids.end()) return it->second;
    return ids[n] = w.add_node(prefix + n);
  }
};

void attach_cap(Work& w, int x) {
  Template t = parse_template(gadget_template("cap"));
  Instantiation in{w, w.names[x] + "/cap" + std::to_string(w.names.size()) + ".", {}};
  for (auto& [a, b] : t.edges) w.add_edge(in.get(a), in.get(b));
  w.add_edge(x, in.get(t.port));
}

void apply_gadget(Work& w, int s, const std::string& which) {
  while (w.degree(s) < 3) attach_cap(w, s);
  Template t = parse_template(gadget_template(which));
  auto inc = w.incident(s);
  std::map<std::string, int> port{{"up", inc[0]}, {"left", inc[1]}, {"right", inc[2]}};
  Instantiation in{w, w.names[s] + "/", {}};
  for (auto& [p, chain] : t.subs) {
    std::vector<int> ids;
    for (auto& c : chain) ids.push_back(in.get(c));
    w.subdivide_from(port.at(p), s, ids);
  }
  for (auto& [a, b] : t.edges) w.add_edge(in.get(a), in.get(b));
  // pairs of s, by partner name then position
  std::vector<int> mine;
  for (int i = 0; i < int(w.pairs.size()); ++i)
    if (w.pairs[i].first == s || w.pairs[i].second == s) mine.push_back(i);
  auto partner = [&](int i) { return w.pairs[i].first == s ? w.pairs[i].second : w.pairs[i].first; };
  std::stable_sort(mine.begin(), mine.end(),
                   [&](int a, int b) { return w.names[partner(a)] < w.names[partner(b)]; });
  for (auto& [host, slot] : t.leaves) {
    int leaf = w.add_node(w.names[s] + "/" + std::to_string(slot));
    w.add_edge(in.get(host), leaf);
    auto& pr = w.pairs[mine.at(slot)];
    (pr.first == s ? pr.first : pr.second) = leaf;
  }
  for (auto& [a, b] : t.newpairs) {
    int pa = w.add_node(w.names[s] + "/p"), pb = w.add_node(w.names[s] + "/q");
    w.add_edge(in.get(a), pa);
    w.add_edge(in.get(b), pb);
    w.pairs.push_back({pa, pb});
  }
}

std::vector<int> components(const Work& w) {
  std::vector<int> comp(w.names.size());
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
  for (int e = 0; e < int(w.edges.size()); ++e)
    if (w.alive[e]) comp[find(w.edges[e].first)] = find(w.edges[e].second);
  for (int x = 0; x < int(comp.size()); ++x) comp[x] = find(x);
  return comp;
}

}  // namespace

const std::string& gadget_template(const std::string& name) {
  auto it = templates().find(name);
  if (it == templates().end()) throw Error("unknown gadget template " + name);
  return it->second;
}

NdpInstance normalize_ndp(const NdpInstance& I) {
  Work w;
  w.names = I.nodes;
  for (auto [u, v] : I.edges) w.add_edge(u, v);
  w.pairs = I.pairs;
  for (auto [s, t] : w.pairs)
    if (s == t) throw Error("ndp: pair with equal terminals");
  auto cnt = w.pair_count();
  for (int x = 0; x < int(w.names.size()); ++x)
    if (cnt[x] > 3) throw TrivialNo("terminal " + w.names[x] + " lies in more than three pairs");
  for (int e = 0; e < int(w.edges.size()); ++e)
    if (w.edges[e].first == w.edges[e].second) w.alive[e] = 0;
  for (int x = 0; x < int(w.names.size()); ++x)
    if (w.degree(x) > 3) throw Error("ndp: node " + w.names[x] + " has degree > 3");
  clean_nonterminals(w);
  {
    auto comp = components(w);
    for (auto [s, t] : w.pairs)
      if (comp[s] != comp[t])
        throw TrivialNo("terminals " + w.names[s] + " and " + w.names[t] + " are not connected");
  }

  std::vector<int> order;
  for (int x = 0; x < int(w.names.size()); ++x)
    if (cnt[x]) order.push_back(x);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return w.names[a] < w.names[b]; });
  for (int k : {3, 2}) {
    for (int s : order)
      if (cnt[s] == k) apply_gadget(w, s, std::to_string(k) + "pair");
  }
  for (int s : order) {
    if (cnt[s] != 1) continue;
    int d = w.degree(s);
    if (d == 1) continue;
    if (d == 2) {
      // a pendant leaf keeps the degree bound and still blocks s for other paths
      int leaf = w.add_node(w.names[s] + "/0");
      w.add_edge(s, leaf);
      for (auto& pr : w.pairs) {
        if (pr.first == s) pr.first = leaf;
        if (pr.second == s) pr.second = leaf;
      }
    } else {
      apply_gadget(w, s, "1pair");
    }
  }

  // parallel edges between non-terminals: subdivide both copies and join them
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::pair<int, int>, int> seen;
    for (int e = 0; e < int(w.edges.size()) && !changed; ++e) {
      if (!w.alive[e]) continue;
      auto key = std::minmax(w.edges[e].first, w.edges[e].second);
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen[key] = e;
        continue;
      }
      int u = key.first;
      int x = w.add_node(w.names[u] + "/rung"), y = w.add_node(w.names[u] + "/rung");
      w.subdivide_from(it->second, u, {x});
      w.subdivide_from(e, u, {y});
      w.add_edge(x, y);
      changed = true;
    }
  }

  // drop components without terminals and isolated nodes
  auto comp = components(w);
  cnt = w.pair_count();
  std::vector<char> keep_comp(w.names.size(), 0);
  for (int x = 0; x < int(w.names.size()); ++x)
    if (cnt[x]) keep_comp[comp[x]] = 1;
  NdpInstance out;
  std::vector<int> id(w.names.size(), -1);
  for (int x = 0; x < int(w.names.size()); ++x)
    if (keep_comp[comp[x]] && (cnt[x] || w.degree(x) > 0)) id[x] = out.node(w.names[x]);
  for (int e = 0; e < int(w.edges.size()); ++e)
    if (w.alive[e] && id[w.edges[e].first] >= 0) out.edges.push_back({id[w.edges[e].first], id[w.edges[e].second]});
  for (auto [s, t] : w.pairs) out.pairs.push_back({id[s], id[t]});
  return out;
}

UtcInstance ndp_to_utc(const NdpInstance& I) {
  UtcInstance res;
  res.normalized = normalize_ndp(I);
  const NdpInstance& G = res.normalized;
  int k = int(G.pairs.size());
  if (k == 0) throw Error("ndp_to_utc: no terminal pairs");
  std::vector<int> deg(G.nodes.size(), 0);
  for (auto [u, v] : G.edges) ++deg[u], ++deg[v];
  std::vector<int> cnt(G.nodes.size(), 0);
  for (auto [s, t] : G.pairs) ++cnt[s], ++cnt[t];
  for (size_t x = 0; x < G.nodes.size(); ++x)
    if ((cnt[x] > 0) != (deg[x] == 1) || cnt[x] > 1 || (!cnt[x] && deg[x] != 3))
      throw Error("ndp_to_utc: normalization left node " + G.nodes[x] + " out of shape");

  auto si = [](int i) { return "s" + std::to_string(i + 1); };
  auto ti = [](int i) { return "t" + std::to_string(i + 1); };
  // spine shared by tree and network; hook(i) is where cherry i attaches
  auto build_spine = [&](Network& n, const std::vector<int>& cherry) {
    int rho = n.add_node("rho");
    if (k == 1) {
      n.add_edge(rho, cherry[0]);
      return;
    }
    int prev = rho;
    for (int j = 0; j < k - 1; ++j) {
      int a = n.add_node();
      n.add_edge(prev, a);
      n.add_edge(a, cherry[j]);
      prev = a;
    }
    n.add_edge(prev, cherry[k - 1]);
  };

  Network& t = res.t;
  std::vector<int> cherry;
  for (int i = 0; i < k; ++i) {
    int b = t.add_node();
    t.add_edge(b, t.add_node(si(i)));
    t.add_edge(b, t.add_node(ti(i)));
    cherry.push_back(b);
  }
  build_spine(t, cherry);

  Network& n = res.n;
  std::vector<int> id(G.nodes.size());
  std::vector<std::string> lab(G.nodes.size());
  for (int i = 0; i < k; ++i) lab[G.pairs[i].second] = ti(i);
  for (size_t x = 0; x < G.nodes.size(); ++x) id[x] = n.add_node(lab[x]);
  for (auto [u, v] : G.edges) n.add_edge(id[u], id[v]);
  cherry.clear();
  for (int i = 0; i < k; ++i) {
    int b = id[G.pairs[i].first];
    n.add_edge(b, n.add_node(si(i)));
    cherry.push_back(b);
  }
  build_spine(n, cherry);
  validate_unrooted(n);
  validate_unrooted(t, true);
  return res;
}

std::pair<Network, Network> hn_to_ruhn(const Network& t1, const Network& t2, bool long_caterpillars) {
  validate_rooted(t1, true);
  validate_rooted(t2, true);
  TaxonSet x = t1.taxa();
  if (x != t2.taxa()) throw Error("hn_to_ruhn: trees have different taxa");
  int n = int(x.size());
  if (n < 2) throw Error("hn_to_ruhn: needs at least two taxa");
  int len = long_caterpillars ? 2 * n + 3 : n + 1;
  std::vector<Taxon> c, d;
  for (int i = 0; i < len; ++i) c.push_back("c" + std::to_string(i)), d.push_back("d" + std::to_string(i));
  for (auto& y : c)
    if (x.count(y)) throw Error("hn_to_ruhn: taxon " + y + " collides with a caterpillar name");
  for (auto& y : d)
    if (x.count(y)) throw Error("hn_to_ruhn: taxon " + y + " collides with a caterpillar name");

  auto build = [&](const Network& t, std::vector<Taxon> cpart) {
    std::vector<Taxon> order = cpart;
    order.insert(order.end(), d.begin(), d.end());
    Network out = caterpillar(order);
    int dn = out.leaf_of().at(d.back()), e = -1;
    for (int f = 0; f < out.num_edges(); ++f)
      if (out.edges[f].u == dn || out.edges[f].v == dn) e = f;
    int u = out.subdivide(e);
    int base = out.num_nodes();
    for (auto& l : t.labels) out.add_node(l);
    for (auto& ed : t.edges) out.add_edge(base + ed.u, base + ed.v);
    out.add_edge(u, base + t.root());
    validate_unrooted(out, true);
    return out;
  };
  std::vector<Taxon> rc(c.rbegin(), c.rend());
  return {build(t1, c), build(t2, rc)};
}

namespace {

// leaf order of a rooted caterpillar from the top; empty if not a caterpillar
std::vector<Taxon> caterpillar_order(const Network& t) {
  std::vector<std::vector<int>> ch(t.num_nodes());
  for (auto& e : t.edges) ch[e.u].push_back(e.v);
  std::vector<Taxon> out;
  int v = t.root();
  while (true) {
    if (ch[v].empty()) {
      out.push_back(t.labels[v]);
      return out;
    }
    int a = ch[v][0], b = ch[v][1];
    bool la = ch[a].empty(), lb = ch[b].empty();
    if (la && lb) {
      auto x = std::minmax(t.labels[a], t.labels[b]);
      out.push_back(x.first);
      out.push_back(x.second);
      return out;
    }
    if (!la && !lb) return {};
    out.push_back(t.labels[la ? a : b]);
    v = la ? b : a;
  }
}

bool opposite(const Network& a, const Network& b) {
  auto oa = caterpillar_order(a), ob = caterpillar_order(b);
  if (oa.size() < 3 || ob.size() < 3) return false;
  std::reverse(ob.begin(), ob.end());
  std::string ca = canonical_rooted(a);
  if (canonical_rooted(rooted_caterpillar(ob)) == ca) return true;
  std::swap(ob[0], ob[1]);
  return canonical_rooted(rooted_caterpillar(ob)) == ca;
}

// image edges below the lowest image node spanning all of x
std::vector<int> spanning_part(const Network& host, const Image& img, const TaxonSet& x) {
  int V = host.num_nodes();
  std::vector<std::vector<int>> out(V);
  std::vector<int> indeg(V, 0);
  for (int e : img.edges) out[host.edges[e].u].push_back(e), ++indeg[host.edges[e].v];
  std::vector<int> below(V, -1);
  std::function<int(int)> count = [&](int v) {
    if (below[v] >= 0) return below[v];
    int c = (!host.labels[v].empty() && x.count(host.labels[v])) ? 1 : 0;
    for (int e : out[v]) c += count(host.edges[e].v);
    return below[v] = c;
  };
  std::vector<int> keep;
  int total = int(x.size());
  for (int e : img.edges) {
    int c = count(host.edges[e].v);
    if (c > 0 && c < total) keep.push_back(e);
  }
  return keep;
}

}  // namespace

bool stupid_rooting(const Network& r1, const Network& r2, int n, int len) {
  (void)n;
  for (char part : {'c', 'd'}) {
    TaxonSet s;
    for (int i = 0; i < len; ++i) s.insert(std::string(1, part) + std::to_string(i));
    if (opposite(restrict_rooted(r1, s), restrict_rooted(r2, s))) return true;
  }
  return false;
}

Network merged_network(const Network& t1, const Network& t2) {
  Network m;
  m.rooted = true;
  int rho = m.add_node();
  std::map<Taxon, int> ret;
  for (auto& x : t1.taxa()) {
    int h = m.add_node();
    m.add_edge(h, m.add_node(x));
    ret[x] = h;
  }
  for (const Network* t : {&t1, &t2}) {
    std::vector<int> id(t->num_nodes());
    for (int v = 0; v < t->num_nodes(); ++v) id[v] = t->labels[v].empty() ? m.add_node() : ret.at(t->labels[v]);
    for (auto& e : t->edges) m.add_edge(id[e.u], id[e.v]);
    m.add_edge(rho, id[t->root()]);
  }
  validate_rooted(m);
  return m;
}

Backmap backmap_restriction(const Network& t1, const Network& t2, const Network& np, const Network& r1,
                            const Image& img1, const Network& r2, const Image& img2) {
  validate_rooted(np);
  TaxonSet x = t1.taxa();
  int n = int(x.size());
  int nprime = int(r1.taxa().size());
  int len = (nprime - n) / 2;
  Backmap out;
  out.q = reticulation_number(np);
  if (out.q > nprime) throw Error("backmap: input network has more reticulations than taxa");
  if (!image_matches(np, img1, r1) || !image_matches(np, img2, r2)) throw Error("backmap: images invalid");

  auto is_cluster = [&](const Network& r) {
    for (int e = 0; e < r.num_edges(); ++e)
      if (split_side(r, e) == x) return true;
    return false;
  };
  out.sensible = !stupid_rooting(r1, r2, n, len) && is_cluster(r1) && is_cluster(r2);
  if (!out.sensible) {
    out.network = merged_network(t1, t2);
    out.p = reticulation_number(out.network);
    return out;
  }

  std::vector<int> keep = spanning_part(np, img1, x);
  for (int e : spanning_part(np, img2, x)) keep.push_back(e);
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<char> in_keep(np.num_edges(), 0), touched(np.num_nodes(), 0);
  std::vector<int> indeg(np.num_nodes(), 0);
  for (int e : keep) in_keep[e] = 1, touched[np.edges[e].u] = touched[np.edges[e].v] = 1, ++indeg[np.edges[e].v];
  std::vector<char> drop_node(np.num_nodes()), drop_edge(np.num_edges());
  for (int v = 0; v < np.num_nodes(); ++v) drop_node[v] = !touched[v];
  for (int e = 0; e < np.num_edges(); ++e) drop_edge[e] = !in_keep[e];
  std::vector<int> map;
  Network h = np.without(drop_node, drop_edge, &map);
  std::vector<int> sources;
  for (int v = 0; v < np.num_nodes(); ++v)
    if (touched[v] && indeg[v] == 0) sources.push_back(map[v]);
  if (sources.size() > 1) {
    int rho = h.add_node();
    for (int s : sources) h.add_edge(rho, s);
  }
  out.network = tidy(h);
  validate_rooted(out.network);
  if (!rooted_tc(out.network, t1) || !rooted_tc(out.network, t2))
    throw Error("backmap: restricted network does not display both trees");
  out.p = reticulation_number(out.network);
  return out;
}

}  // namespace phylonet
