#include <doctest.h>

#include <set>

#include "phylonet/gadgets.hpp"
#include "phylonet/hn.hpp"
#include "phylonet/reduce.hpp"
#include "phylonet/ruhn.hpp"
#include "phylonet/utc.hpp"
#include "support.hpp"

using namespace phylonet;
using namespace testing_support;

namespace {

void check_normal_form(const NdpInstance& g) {
  std::vector<int> deg(g.nodes.size(), 0), cnt(g.nodes.size(), 0);
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : g.edges) {
    CHECK(u != v);
    CHECK(seen.insert(std::minmax(u, v)).second);
    ++deg[u], ++deg[v];
  }
  for (auto [s, t] : g.pairs) ++cnt[s], ++cnt[t];
  for (size_t x = 0; x < g.nodes.size(); ++x) {
    CHECK(deg[x] <= 3);
    CHECK(deg[x] != 2);
    CHECK((cnt[x] > 0) == (deg[x] == 1));
    CHECK(cnt[x] <= 1);
  }
}

}  // namespace

TEST_CASE("gadget fixtures match the built-in templates") {
  for (std::string name : {"cap", "1pair", "2pair", "3pair"})
    CHECK(read_file(data_path("gadgets/" + name + ".txt")) == gadget_template(name));
}

TEST_CASE("normalization reaches the normal form") {
  // one terminal each in 3, 2 and 1 pairs, on K4 plus a pendant path
  auto I = parse_ndp("graph\na b\na c\na d\nb c\nb d\nc d\npair a b\npair a c\npair a d\npair b c\n");
  auto g = normalize_ndp(I);
  check_normal_form(g);
  CHECK(g.pairs.size() == 4 + 1);  // d is a degree-3 terminal in one pair and gets a new pair
  CHECK(normalize_ndp(I).str() == g.str());
  CHECK(read_file(data_path("ndp/k4.normalized")) == g.str());
  CHECK(ndp_oracle(I).has_value() == ndp_oracle(g).has_value());
}

TEST_CASE("single pair on one edge") {
  auto u = ndp_to_utc(parse_ndp("graph\ns t\npair s t\n"));
  CHECK(u.t.taxa() == TaxonSet{"rho", "s1", "t1"});
  CHECK(u.n.num_edges() == 3);
  CHECK(utc_oracle(u.n, u.t).has_value());
}

TEST_CASE("two pairs through one shared node") {
  auto no = parse_ndp("graph\ns1 x\ns2 x\nx y\ny t1\ny t2\npair s1 t1\npair s2 t2\n");
  auto u = ndp_to_utc(no);
  CHECK(u.normalized.str() == no.str());
  CHECK_FALSE(ndp_oracle(no));
  CHECK_FALSE(utc_oracle(u.n, u.t));
  CHECK_FALSE(utc_subset_oracle(u.n, u.t));
  // a second route for one of the pairs makes it solvable
  auto yes = parse_ndp("graph\ns1 x\nx y\ny t1\ns2 a\na b\nb t2\nx a\ny b\npair s1 t1\npair s2 t2\n");
  CHECK(ndp_oracle(yes));
  auto u2 = ndp_to_utc(yes);
  CHECK(u2.normalized.str() == yes.str());
  CHECK(utc_oracle(u2.n, u2.t));
  CHECK(utc_subset_oracle(u2.n, u2.t));
}

TEST_CASE("ndp errors") {
  CHECK_THROWS_AS(parse_ndp("a b\npair a a\n"), Error);
  auto four = parse_ndp("a b\na c\na d\npair a b\npair a c\npair a d\npair a e\n");
  CHECK_THROWS_AS(normalize_ndp(four), TrivialNo);
  CHECK_THROWS_AS(normalize_ndp(parse_ndp("a b\na c\na d\na e\npair b c\n")), Error);
  CHECK_THROWS_AS(normalize_ndp(parse_ndp("a b\nc d\npair a c\n")), TrivialNo);
}

TEST_CASE("reduction agrees with the disjoint paths oracle") {
  std::mt19937_64 rng(2024);
  Guards g;
  g.oracle_edges = 64;
  int yes = 0, no = 0;
  for (int it = 0; it < 40; ++it) {
    int v = 4 + int(rng() % 5);
    int p = 1 + int(rng() % 2);
    auto I = random_ndp(v, p, rng);
    bool want = ndp_oracle(I).has_value();
    try {
      auto u = ndp_to_utc(I);
      check_normal_form(u.normalized);
      CHECK(ndp_oracle(u.normalized).has_value() == want);
      if (u.n.num_edges() > g.oracle_edges) continue;
      CHECK(utc_oracle(u.n, u.t, g).has_value() == want);
      (want ? yes : no)++;
    } catch (const TrivialNo&) {
      CHECK_FALSE(want);
    }
  }
  CHECK(yes >= 10);
  CHECK(no >= 2);
}

TEST_CASE("caterpillar construction") {
  auto t1 = parse_tree("((a,b),c);", Mode::Rooted), t2 = parse_tree("((a,c),b);", Mode::Rooted);
  auto [u1, u2] = hn_to_ruhn(t1, t2);
  CHECK(u1.taxa().size() == 11);
  CHECK(u2.taxa() == u1.taxa());
  TaxonSet cd;
  for (int i = 0; i <= 3; ++i) cd.insert("c" + std::to_string(i)), cd.insert("d" + std::to_string(i));
  CHECK(canonical_unrooted(restrict_to_taxa(u1, cd)) ==
        canonical_unrooted(caterpillar({"c0", "c1", "c2", "c3", "d0", "d1", "d2", "d3"})));
  CHECK(canonical_unrooted(restrict_to_taxa(u2, cd)) ==
        canonical_unrooted(caterpillar({"c3", "c2", "c1", "c0", "d0", "d1", "d2", "d3"})));
  // the tree part hangs next to d_n, rooted where it attaches
  for (auto [u, t] : {std::pair{u1, t1}, std::pair{u2, t2}}) {
    Network r = restrict_to_taxa(u, {"a", "b", "c", "d3"});
    int e = -1;
    for (int f = 0; f < r.num_edges(); ++f)
      if (r.labels[r.edges[f].u] == "d3" || r.labels[r.edges[f].v] == "d3") e = f;
    Network rooted = restrict_rooted(root_at_edge(r, e), {"a", "b", "c"});
    CHECK(canonical_rooted(rooted) == canonical_rooted(t));
  }
  auto [l1, l2] = hn_to_ruhn(t1, t2, true);
  CHECK(l1.taxa().size() == 3 + 2 * 9);
  CHECK_THROWS_AS(hn_to_ruhn(parse_tree("((c0,b),c);", Mode::Rooted), parse_tree("((c0,c),b);", Mode::Rooted)),
                  Error);
}

TEST_CASE("root uncertainty adds exactly one on all rooted triple pairs") {
  Guards g;
  g.hn_taxa = 14;
  std::vector<std::string> triples{"((a,b),c);", "((a,c),b);", "((b,c),a);"};
  for (auto& x : triples)
    for (auto& y : triples) {
      if (y < x) continue;
      auto t1 = parse_tree(x, Mode::Rooted), t2 = parse_tree(y, Mode::Rooted);
      auto h = hn_exact({t1, t2}, 3);
      REQUIRE(h);
      auto [u1, u2] = hn_to_ruhn(t1, t2);
      auto r = ruhn_exact({u1, u2}, 4, g);
      REQUIRE(r);
      CHECK(r->value == h->value + 1);
      auto bm = backmap_restriction(t1, t2, r->network, r->rooted[0], r->images[0], r->rooted[1], r->images[1]);
      CHECK(bm.sensible);
      CHECK(bm.q == r->value);
      CHECK(bm.p < bm.q);
      CHECK(bm.p == h->value);
      CHECK(is_valid_rooted(bm.network));
      CHECK(rooted_tc(bm.network, t1));
      CHECK(rooted_tc(bm.network, t2));
    }
}

TEST_CASE("kernel on the caterpillar instance keeps the decision") {
  Guards g;
  g.hn_taxa = 14;
  auto t1 = parse_tree("((a,b),c);", Mode::Rooted), t2 = parse_tree("((a,c),b);", Mode::Rooted);
  auto [u1, u2] = hn_to_ruhn(t1, t2);
  for (int k = 1; k <= 2; ++k) {
    auto ker = kernelize_ruhn({u1, u2}, k);
    bool want = ruhn_exact({u1, u2}, k, g).has_value();
    if (ker.decided) {
      CHECK(*ker.decided == want);
    } else {
      CHECK(ruhn_exact(ker.trees, k, g).has_value() == want);
    }
  }
}

TEST_CASE("back-map falls back on opposite caterpillars") {
  auto t1 = parse_tree("((a,b),c);", Mode::Rooted), t2 = parse_tree("((a,c),b);", Mode::Rooted);
  auto [u1, u2] = hn_to_ruhn(t1, t2);
  // root the first tree next to its tree part, the second inside its c-part
  auto edge_to = [](const Network& t, const Taxon& x) {
    int v = t.leaf_of().at(x);
    for (int e = 0; e < t.num_edges(); ++e)
      if (t.edges[e].u == v || t.edges[e].v == v) return e;
    return -1;
  };
  Network r1 = root_at_edge(u1, edge_to(u1, "a")), r2 = root_at_edge(u2, edge_to(u2, "c1"));
  CHECK(stupid_rooting(r1, r2, 3, 4));
  Network np = merged_network(r1, r2);
  auto i1 = rooted_tc(np, r1), i2 = rooted_tc(np, r2);
  REQUIRE(i1);
  REQUIRE(i2);
  auto bm = backmap_restriction(t1, t2, np, r1, *i1, r2, *i2);
  CHECK_FALSE(bm.sensible);
  CHECK(bm.p == 3);
  CHECK(rooted_tc(bm.network, t1));
  CHECK(rooted_tc(bm.network, t2));
  // both rooted inside the c-part in the same orientation: sensible
  Network s1 = root_at_edge(u1, edge_to(u1, "c2")), s2 = root_at_edge(u2, edge_to(u2, "c2"));
  CHECK_FALSE(stupid_rooting(s1, s2, 3, 4));
}
