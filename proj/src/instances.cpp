#include "phylonet/instances.hpp"

#include <algorithm>

namespace phylonet {

std::vector<Taxon> taxa_names(int n) {
  std::vector<Taxon> v;
  for (int i = 0; i < n; ++i) v.push_back(i < 26 ? std::string(1, char('a' + i)) : "t" + std::to_string(i));
  return v;
}

Network random_tree(int n, std::mt19937_64& rng) {
  auto names = taxa_names(n);
  std::shuffle(names.begin(), names.end(), rng);
  Network t;
  if (n == 1) {
    t.add_node(names[0]);
    return t;
  }
  t.add_edge(t.add_node(names[0]), t.add_node(names[1]));
  for (int i = 2; i < n; ++i) {
    int e = int(rng() % t.num_edges());
    int w = t.subdivide(e);
    t.add_edge(w, t.add_node(names[i]));
  }
  return t;
}

Network random_rooted_tree(int n, std::mt19937_64& rng) {
  Network u = random_tree(n, rng);
  if (n == 1) {
    u.rooted = true;
    return u;
  }
  return root_at_edge(u, int(rng() % u.num_edges()));
}

Network random_network(int n, int r, std::mt19937_64& rng) {
  Network t = random_tree(n, rng);
  for (int i = 0; i < r; ++i) {
    int a = int(rng() % t.num_edges()), b;
    do b = int(rng() % t.num_edges());
    while (b == a);
    int wa = t.subdivide(a), wb = t.subdivide(b);
    t.add_edge(wa, wb);
  }
  return t;
}

Network random_displayed_tree(const Network& n, std::mt19937_64& rng) {
  std::vector<int> order(n.num_edges());
  for (int i = 0; i < n.num_edges(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> parent(n.num_nodes());
  for (int i = 0; i < n.num_nodes(); ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> drop(n.num_edges(), 1);
  for (int e : order) {
    int a = find(n.edges[e].u), b = find(n.edges[e].v);
    if (a != b) parent[a] = b, drop[e] = 0;
  }
  return tidy(n.without({}, drop));
}

NdpInstance random_ndp(int v, int p, std::mt19937_64& rng) {
  NdpInstance I;
  for (int i = 0; i < v; ++i) I.node("v" + std::to_string(i));
  std::vector<int> deg(v, 0);
  for (int t = 0; t < 3 * v; ++t) {
    int a = int(rng() % v), b = int(rng() % v);
    if (a == b || deg[a] >= 3 || deg[b] >= 3) continue;
    I.edges.push_back({a, b});
    ++deg[a], ++deg[b];
  }
  while (int(I.pairs.size()) < p) {
    int a = int(rng() % v), b = int(rng() % v);
    if (a != b) I.pairs.push_back({a, b});
  }
  return I;
}

}  // namespace phylonet
