#include <functional>
#include <random>

#include "doctest.h"
#include "phylonet/hn.hpp"
#include "phylonet/uhn.hpp"
#include "phylonet/utc.hpp"
#include "support.hpp"

using namespace phylonet;
using namespace testing_support;

namespace {

// Every rooted network with r(G) reticulations: label the node sides, then
// insert the other taxa one by one on any arc.
bool any_network(const Generator& g, const TaxonSet& x, const std::function<bool(const Network&)>& pred) {
  std::vector<Taxon> all(x.begin(), x.end());
  size_t ns = g.node_sides.size();
  if (ns > all.size()) return false;
  std::vector<int> pick(all.size());
  std::function<bool(Network, std::vector<Taxon>)> insert = [&](Network n, std::vector<Taxon> rest) {
    if (rest.empty()) {
      Network t = tidy(n, true);
      return is_valid_rooted(t) && reticulation_number(t) == g.r && pred(t);
    }
    Taxon y = rest.back();
    rest.pop_back();
    for (int e = 0; e < n.num_edges(); ++e) {
      Network m = n;
      int w = m.subdivide(e);
      m.add_edge(w, m.add_node(y));
      if (insert(m, rest)) return true;
    }
    return false;
  };
  // ordered choice of node-side labels
  std::vector<Taxon> chosen;
  std::function<bool()> choose = [&]() {
    if (chosen.size() == ns) {
      Network n = g.g;
      for (size_t i = 0; i < ns; ++i) n.add_edge(g.node_sides[i], n.add_node(chosen[i]));
      std::vector<Taxon> rest;
      for (auto& y : all)
        if (std::find(chosen.begin(), chosen.end(), y) == chosen.end()) rest.push_back(y);
      return insert(n, rest);
    }
    for (auto& y : all) {
      if (std::find(chosen.begin(), chosen.end(), y) != chosen.end()) continue;
      chosen.push_back(y);
      if (choose()) return true;
      chosen.pop_back();
    }
    return false;
  };
  return choose();
}

}  // namespace

TEST_CASE("generator enumeration") {
  CHECK(enumerate_generators(0).size() == 1);
  CHECK(enumerate_generators(1).size() == 1);
  for (int r = 1; r <= 3; ++r) {
    auto gens = enumerate_generators(r);
    MESSAGE("r = " << r << ": " << gens.size() << " generators");
    std::set<std::string> canon;
    for (auto& g : gens) {
      CHECK(int(g.edge_sides.size()) <= 4 * r - 1);
      CHECK(int(g.node_sides.size()) <= r);
      CHECK(reticulation_number(g.g) == r);
      canon.insert(g.canon);
    }
    CHECK(canon.size() == gens.size());
  }
  Guards g;
  g.generator_r = 2;
  CHECK_THROWS_AS(enumerate_generators(3, g), GuardExceeded);
}

TEST_CASE("attaching taxa") {
  auto g0 = enumerate_generators(0).front();
  std::set<std::string> trees;
  attach_taxa(g0, {"x", "y", "z"}, [&](const Network& n) {
    CHECK(is_valid_rooted(n, true));
    trees.insert(canonical_rooted(n));
    return true;
  });
  CHECK(trees.size() == 3);
  for (auto& g : enumerate_generators(1)) {
    int count = 0;
    attach_taxa(g, {"x", "y"}, [&](const Network& n) {
      CHECK(is_valid_rooted(n));
      CHECK(reticulation_number(n) == 1);
      ++count;
      return true;
    });
    CHECK(count > 0);
  }
  for (auto& g : enumerate_generators(2)) {
    attach_taxa(g, {"a", "b", "c"}, [&](const Network& n) {
      CHECK(is_valid_rooted(n));
      CHECK(reticulation_number(n) == 2);
      return true;
    });
  }
}

TEST_CASE("rooted hybridization number on small instances") {
  auto t = parse_tree("((x,y),z);", Mode::Rooted);
  auto s = hn_exact({t, t}, 3);
  REQUIRE(s);
  CHECK(s->value == 0);
  auto u = parse_tree("((x,z),y);", Mode::Rooted);
  s = hn_exact({t, u}, 3);
  REQUIRE(s);
  CHECK(s->value == 1);
  CHECK(rooted_tc(s->network, t));
  CHECK(rooted_tc(s->network, u));
  CHECK_FALSE(hn_exact({t, u}, 0));
}

TEST_CASE("rooted hybridization number of the example rootings") {
  auto example = parse_trees(read_file(data_path("example_pair.nwk")), Mode::Unrooted);
  // root the first tree on the edge entering a, the second on the edge entering e
  auto root_at_leaf = [](const Network& t, const Taxon& x) {
    int v = t.leaf_of().at(x);
    for (int e = 0; e < t.num_edges(); ++e)
      if (t.edges[e].u == v || t.edges[e].v == v) return root_at_edge(t, e);
    throw Error("no leaf edge");
  };
  auto r1 = root_at_leaf(example[0].net, "a"), r2 = root_at_leaf(example[1].net, "e");
  auto s = hn_exact({r1, r2}, 3);
  REQUIRE(s);
  CHECK(s->value == 3);
  CHECK(reticulation_number(s->network) == 3);
  CHECK_FALSE(hn_exact({r1, r2}, 2));
}

TEST_CASE("subtree collapse and cluster split keep the value") {
  std::mt19937_64 rng(3);
  Guards big;
  big.hn_taxa = 8;
  for (int it = 0; it < 25; ++it) {
    int n = 3 + int(rng() % 3);
    auto a = random_rooted_tree(n, rng), b = random_rooted_tree(n, rng);
    auto s = hn_exact({a, b}, 3, big);
    REQUIRE(s);
    CHECK(rooted_tc(s->network, a));
    CHECK(rooted_tc(s->network, b));
    // brute force: node-side labels, then every remaining taxon inserted on any arc
    std::optional<int> best;
    for (int k = 0; k <= 3 && !best; ++k)
      for (auto& g : enumerate_generators(k))
        if (!best && any_network(g, a.taxa(), [&](const Network& net) {
              return rooted_tc(net, a) && rooted_tc(net, b);
            }))
          best = k;
    REQUIRE(best);
    CHECK(s->value == *best);
  }
}

TEST_CASE("unrooted exhaustive oracle") {
  auto example = parse_trees(read_file(data_path("example_pair.nwk")), Mode::Unrooted);
  CHECK(uhn_exhaustive_oracle({example[0].net, example[1].net}, 2) == 1);
  CHECK(uhn_exhaustive_oracle({example[0].net, example[0].net}, 2) == 0);
  std::mt19937_64 rng(9);
  for (int it = 0; it < 15; ++it) {
    auto a = random_tree(5, rng), b = random_tree(5, rng);
    auto o = uhn_exhaustive_oracle({a, b}, 2);
    REQUIRE(o);
    CHECK(*o == uhn_solve(a, b).value);
  }
}
