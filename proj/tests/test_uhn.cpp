#include <random>

#include "doctest.h"
#include "phylonet/uhn.hpp"
#include "phylonet/utc.hpp"
#include "support.hpp"

using namespace phylonet;
using namespace testing_support;

TEST_CASE("agreement forest on the two caterpillars") {
  auto example = parse_trees(read_file(data_path("example_pair.nwk")), Mode::Unrooted);
  const auto& t1 = example[0].net;
  const auto& t2 = example[1].net;
  auto f = maf_exact(t1, t2);
  CHECK(f.blocks.size() == 2);
  CHECK(is_agreement_forest(t1, t2, f.blocks));
  CHECK_FALSE(is_agreement_forest(t1, t2, {t1.taxa()}));
  CHECK(tbr_bfs_oracle(t1, t2) == 1);
  auto s = uhn_solve(t1, t2);
  CHECK(s.value == 1);
  CHECK(reticulation_number(s.network.net) == 1);
  CHECK(utc_solve(s.network.net, t1));
  CHECK(utc_solve(s.network.net, t2));
}

TEST_CASE("quartets") {
  auto q1 = parse_tree("((a,b),c,d);", Mode::Unrooted);
  auto q2 = parse_tree("((a,c),b,d);", Mode::Unrooted);
  auto f = maf_exact(q1, q2);
  CHECK(f.blocks.size() == 2);
  CHECK(tbr_bfs_oracle(q1, q2) == 1);
  CHECK(maf_exact(q1, q1).blocks.size() == 1);
  CHECK(tbr_bfs_oracle(q1, q1) == 0);
  // a forest that fails node-disjointness in the first tree
  CHECK_FALSE(is_agreement_forest(q1, q2, {{"a", "c"}, {"b", "d"}}));
  CHECK(is_agreement_forest(q1, q2, {{"a"}, {"b", "c", "d"}}));
}

TEST_CASE("tbr neighbourhood of a quartet") {
  auto q = parse_tree("((a,b),c,d);", Mode::Unrooted);
  std::set<std::string> seen;
  for (auto& m : tbr_neighbours(q)) seen.insert(canonical_unrooted(m));
  CHECK(seen.size() == 3);  // all quartet topologies, itself included
}

TEST_CASE("guards") {
  std::mt19937_64 rng(5);
  auto a = random_tree(8, rng), b = random_tree(8, rng);
  CHECK_THROWS_AS(tbr_bfs_oracle(a, b), GuardExceeded);
  Guards g;
  g.maf_taxa = 6;
  CHECK_THROWS_AS(maf_exact(a, b, false, g), GuardExceeded);
  CHECK_NOTHROW(maf_exact(a, b, true, g));
}

TEST_CASE("maf size matches tbr distance on random pairs") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 60; ++it) {
    int n = 3 + int(rng() % 5);
    auto a = random_tree(n, rng), b = random_tree(n, rng);
    auto f = maf_exact(a, b);
    CHECK(is_agreement_forest(a, b, f.blocks));
    CHECK(int(f.blocks.size()) - 1 == tbr_bfs_oracle(a, b));
  }
}

TEST_CASE("wiring and unwiring forests") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 150; ++it) {
    int n = 3 + int(rng() % 8);
    auto a = random_tree(n, rng), b = random_tree(n, rng);
    auto f = maf_exact(a, b);
    auto w = network_from_forest(a, b, f);
    CHECK(reticulation_number(w.net) == int(f.blocks.size()) - 1);
    CHECK(image_matches(w.net, w.img1, a));
    CHECK(image_matches(w.net, w.img2, b));
    auto back = forest_from_network(w.net, w.img1, w.img2);
    CHECK(is_agreement_forest(a, b, back.blocks));
    CHECK(back.blocks.size() <= f.blocks.size());
  }
}

TEST_CASE("forest from a random network") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 100; ++it) {
    int n = 4 + int(rng() % 5), r = 1 + int(rng() % 3);
    auto net = tidy(random_network(n, r, rng));
    auto a = random_displayed_tree(net, rng), b = random_displayed_tree(net, rng);
    auto ia = utc_oracle(net, a), ib = utc_oracle(net, b);
    REQUIRE(ia);
    REQUIRE(ib);
    auto f = forest_from_network(net, *ia, *ib);
    CHECK(is_agreement_forest(a, b, f.blocks));
    CHECK(int(f.blocks.size()) - 1 <= reticulation_number(net));
  }
}
