#include <random>

#include "doctest.h"
#include "phylonet/core.hpp"
#include "phylonet/newick.hpp"
#include "support.hpp"

using namespace phylonet;
using namespace testing_support;

TEST_CASE("reticulation number of the example networks") {
  auto nu = parse_network(read_file(data_path("example_unrooted_net.txt")), Mode::Unrooted);
  CHECK(nu.num_nodes() == 12);
  CHECK(nu.num_edges() == 12);
  CHECK(reticulation_number(nu) == 1);
  auto nr = parse_network(read_file(data_path("example_rooted_net.enwk")), Mode::Rooted);
  CHECK(reticulation_number(nr) == 2);
  CHECK(reticulation_number(caterpillar({"a", "b", "c", "d", "e"})) == 0);
}

TEST_CASE("restriction") {
  auto cat = caterpillar({"a", "b", "c", "d", "e", "f"});
  auto star = restrict_to_taxa(cat, {"a", "b", "c"});
  CHECK(star.num_nodes() == 4);
  CHECK(star.num_edges() == 3);
  CHECK(labelled_isomorphic(restrict_to_taxa(cat, cat.taxa()), cat));
  auto q = restrict_to_taxa(cat, {"a", "b", "e", "f"});
  CHECK(canonical_unrooted(q) == canonical_unrooted(caterpillar({"a", "b", "e", "f"})));
  CHECK_FALSE(canonical_unrooted(q) == canonical_unrooted(caterpillar({"a", "e", "b", "f"})));
  auto one = restrict_to_taxa(cat, {"c"});
  CHECK(one.num_nodes() == 1);
  CHECK(one.labels[0] == "c");
  CHECK_THROWS_AS(restrict_to_taxa(cat, {"z"}), Error);
}

TEST_CASE("tidy") {
  Network p;
  int u = p.add_node("u"), v = p.add_node(), w = p.add_node("w");
  p.add_edge(u, v);
  p.add_edge(v, w);
  auto t = tidy(p);
  CHECK(t.num_nodes() == 2);
  CHECK(t.num_edges() == 1);

  auto cat = caterpillar({"a", "b", "c", "d"});
  auto same = tidy(cat);
  CHECK(same.num_nodes() == cat.num_nodes());
  CHECK(same.num_edges() == cat.num_edges());

  // pendant unlabelled subtree hanging off the middle edge of a quartet
  Network g = cat;
  int e = 0;
  for (int i = 0; i < g.num_edges(); ++i)
    if (g.labels[g.edges[i].u].empty() && g.labels[g.edges[i].v].empty()) e = i;
  int s = g.subdivide(e);
  int x = g.add_node(), y = g.add_node(), z = g.add_node();
  g.add_edge(s, x);
  g.add_edge(x, y);
  g.add_edge(x, z);
  auto cleaned = tidy(g);
  CHECK(cleaned.num_nodes() == 6);
  CHECK(cleaned.num_edges() == 5);
  CHECK(labelled_isomorphic(cleaned, cat));

  // loops and parallel edges disappear
  Network m;
  int a = m.add_node("a"), b = m.add_node("b"), c = m.add_node("c");
  int h = m.add_node(), k = m.add_node();
  m.add_edge(a, h);
  m.add_edge(h, k);
  m.add_edge(h, k);
  m.add_edge(k, b);
  m.add_edge(k, k);
  m.add_edge(h, c);
  auto mc = tidy(m);
  CHECK(is_valid_unrooted(mc));
  CHECK(reticulation_number(mc) == 0);
}

TEST_CASE("tidy is idempotent and keeps taxa") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    auto n = random_network(6, int(rng() % 3), rng);
    auto once = tidy(n), twice = tidy(once);
    CHECK(once.taxa() == n.taxa());
    CHECK(once.num_nodes() == twice.num_nodes());
    CHECK(once.num_edges() == twice.num_edges());
    CHECK(reticulation_number(n) >= 0);
    CHECK((reticulation_number(n) == 0) == (n.num_edges() == n.num_nodes() - 1));
  }
}

TEST_CASE("isomorphism") {
  auto c1 = caterpillar({"a", "b", "c", "d", "e", "f"});
  auto c2 = caterpillar({"f", "e", "d", "c", "b", "a"});
  CHECK(labelled_isomorphic(c1, c2));
  CHECK(labelled_isomorphic(c1, c1));
  auto trees = parse_trees(read_file(data_path("example_pair.nwk")), Mode::Unrooted);
  CHECK_FALSE(labelled_isomorphic(trees[0].net, trees[1].net));
  CHECK_THROWS_AS(labelled_isomorphic(c1, caterpillar({"a", "b", "c", "d"})), Error);

  // equivalence relation on random triples
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    auto a = random_tree(5, rng), b = random_tree(5, rng), c = random_tree(5, rng);
    bool ab = labelled_isomorphic(a, b), bc = labelled_isomorphic(b, c), ac = labelled_isomorphic(a, c);
    CHECK(labelled_isomorphic(b, a) == ab);
    if (ab && bc) CHECK(ac);
  }
}

TEST_CASE("rooting and unrooting") {
  auto star = caterpillar({"x", "y", "z"});
  int ez = -1;
  for (int e = 0; e < star.num_edges(); ++e)
    if (star.labels[star.edges[e].u] == "z" || star.labels[star.edges[e].v] == "z") ez = e;
  auto r = root_at_edge(star, ez);
  CHECK(is_valid_rooted(r, true));
  CHECK(canonical_rooted(r) == "((x,y),z)");
  CHECK(labelled_isomorphic(unroot(r), star));

  auto trees = parse_trees(read_file(data_path("example_pair.nwk")), Mode::Unrooted);
  auto t1 = trees[0].net;
  int ea = -1;
  for (int e = 0; e < t1.num_edges(); ++e)
    if (t1.labels[t1.edges[e].u] == "a" || t1.labels[t1.edges[e].v] == "a") ea = e;
  auto r1 = root_at_edge(t1, ea);
  CHECK(canonical_rooted(r1) == canonical_rooted(rooted_caterpillar({"a", "b", "c", "d", "e", "f"})));

  std::mt19937_64 rng(11);
  for (int it = 0; it < 30; ++it) {
    auto t = random_tree(2 + int(rng() % 7), rng);
    for (int e = 0; e < t.num_edges(); ++e) {
      auto rt = root_at_edge(t, e);
      CHECK(is_valid_rooted(rt, true));
      CHECK(labelled_isomorphic(unroot(rt), t));
    }
  }
  CHECK(labelled_isomorphic(unroot(rooted_caterpillar({"a", "b", "c", "d", "e"})),
                            caterpillar({"a", "b", "c", "d", "e"})));
  CHECK_THROWS_AS(root_at_edge(star, 7), Error);
}

TEST_CASE("restriction keeps validity") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 100; ++it) {
    auto t = random_tree(8, rng);
    TaxonSet s;
    for (auto& x : t.taxa())
      if (rng() % 2) s.insert(x);
    if (s.empty()) s.insert("a");
    auto r = restrict_to_taxa(t, s);
    CHECK(r.taxa() == s);
    if (s.size() >= 2) CHECK(is_valid_unrooted(r, true));
  }
}

TEST_CASE("bridges") {
  auto nu = parse_network(read_file(data_path("example_unrooted_net.txt")), Mode::Unrooted);
  auto br = bridges(nu);
  int count = 0;
  for (char b : br) count += b;
  CHECK(count == 6);
}
