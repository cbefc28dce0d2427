#include <random>

#include "doctest.h"
#include "phylonet/reduce.hpp"
#include "phylonet/utc.hpp"
#include "support.hpp"

using namespace phylonet;
using namespace testing_support;

TEST_CASE("rooted containment") {
  auto nr = parse_network(read_file(data_path("example_rooted_net.enwk")), Mode::Rooted);
  // rootings of the two caterpillars on their central edges
  auto r1 = parse_tree("(((a,b),c),(d,(e,f)));", Mode::Rooted);
  auto r2 = parse_tree("((a,(b,c)),(f,(d,e)));", Mode::Rooted);
  auto i1 = rooted_tc(nr, r1);
  REQUIRE(i1);
  CHECK(image_matches(nr, *i1, r1));
  CHECK(rooted_tc(nr, r2));
  auto rooted = parse_trees(read_file(data_path("example_rooted_pair.nwk")), Mode::Rooted);
  CHECK_FALSE(rooted_tc(nr, rooted[0].net));
  auto t = rooted_caterpillar({"a", "c", "b", "d", "e", "f"});
  CHECK_FALSE(rooted_tc(nr, t));
  auto tree = rooted_caterpillar({"a", "b", "c"});
  auto self = rooted_tc(tree, tree);
  REQUIRE(self);
  CHECK(int(self->edges.size()) == tree.num_edges());
}

TEST_CASE("unrooted containment on the examples") {
  auto nu = parse_network(read_file(data_path("example_unrooted_net.txt")), Mode::Unrooted);
  auto example = parse_trees(read_file(data_path("example_pair.nwk")), Mode::Unrooted);
  for (bool k : {false, true}) {
    CHECK(utc_solve(nu, example[0].net, k));
    CHECK(utc_solve(nu, example[1].net, k));
  }
  auto img = utc_oracle(nu, example[0].net);
  REQUIRE(img);
  CHECK(img->edges.size() == 11);  // one cycle edge dropped
  auto cert = utc_certificate(nu, example[1].net);
  REQUIRE(cert);
  CHECK(image_matches(nu, *cert, example[1].net));

  auto n6 = parse_network(read_file(data_path("cycle_net.txt")), Mode::Unrooted);
  auto t6 = parse_tree(read_file(data_path("cycle_tree.nwk")), Mode::Unrooted);
  CHECK_FALSE(utc_solve(n6, t6, false));
  CHECK_FALSE(utc_solve(n6, t6, true));
  CHECK_FALSE(utc_oracle(n6, t6));

  auto t = caterpillar({"a", "b", "c", "d", "e"});
  CHECK(utc_solve(t, t));
  auto full = utc_oracle(t, t);
  REQUIRE(full);
  CHECK(int(full->edges.size()) == t.num_edges());
}

TEST_CASE("oracle guard") {
  std::mt19937_64 rng(9);
  auto n = random_network(10, 3, rng);
  Guards g;
  g.oracle_edges = 10;
  CHECK_THROWS_AS(utc_oracle(n, random_tree(10, rng), g), GuardExceeded);
}

TEST_CASE("branching agrees with the oracle") {
  std::mt19937_64 rng(77);
  int yes = 0;
  for (int it = 0; it < 200; ++it) {
    int nt = 3 + int(rng() % 6), r = int(rng() % 4);
    auto n = random_network(nt, r, rng);
    if (n.num_edges() > 24) continue;
    auto t = rng() % 2 ? random_displayed_tree(n, rng) : random_tree(nt, rng);
    bool want = utc_oracle(n, t).has_value();
    yes += want;
    CHECK(utc_solve(n, t, false) == want);
    CHECK(utc_solve(n, t, true) == want);
    if (want) {
      auto c = utc_certificate(n, t);
      REQUIRE(c);
      CHECK(image_matches(n, *c, t));
    }
  }
  CHECK(yes > 40);
}

TEST_CASE("subtree search agrees with subset enumeration") {
  std::mt19937_64 rng(4242);
  int yes = 0, runs = 0;
  for (int it = 0; it < 300; ++it) {
    int nt = 3 + int(rng() % 7), r = int(rng() % 5);
    auto n = random_network(nt, r, rng);
    if (n.num_edges() > 24) continue;
    auto t = rng() % 2 ? random_displayed_tree(n, rng) : random_tree(nt, rng);
    auto a = utc_oracle(n, t), b = utc_subset_oracle(n, t);
    CHECK(a.has_value() == b.has_value());
    if (a) CHECK(image_matches(n, *a, t));
    yes += b.has_value();
    ++runs;
  }
  CHECK(runs > 150);
  CHECK(yes > 40);
}
