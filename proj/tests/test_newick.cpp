#include <random>

#include "doctest.h"
#include "phylonet/newick.hpp"
#include "support.hpp"

using namespace phylonet;
using namespace testing_support;

TEST_CASE("parse the example trees") {
  auto t1 = parse_tree("((a,b),c,(d,(e,f)));", Mode::Unrooted);
  CHECK(labelled_isomorphic(t1, caterpillar({"a", "b", "c", "d", "e", "f"})));
  auto t2 = parse_tree("((c,b),a,(f,(e,d)));", Mode::Unrooted);
  CHECK(labelled_isomorphic(t2, caterpillar({"c", "b", "a", "f", "e", "d"})));
  CHECK_THROWS_AS(parse_tree("(a,(b,c)));", Mode::Unrooted), ParseError);
  CHECK_THROWS_AS(parse_tree("(a,(b,c));", Mode::Unrooted), ParseError);  // not a trifurcation
  CHECK_THROWS_AS(parse_tree("((a,b),c,(a,d));", Mode::Unrooted), ParseError);
  CHECK_THROWS_AS(parse_tree("((a,b),c,d)", Mode::Unrooted), ParseError);
  CHECK_THROWS_AS(parse_tree("((a:1,b),c,d);", Mode::Unrooted), ParseError);
  CHECK_THROWS_AS(parse_tree("(a,b,c);", Mode::Rooted), ParseError);
  CHECK_NOTHROW(parse_tree("(a,b);", Mode::Unrooted));
  CHECK_NOTHROW(parse_tree(" ( [comment] (a , b) ,\n c ) ; ", Mode::Rooted));
}

TEST_CASE("parse error positions") {
  try {
    parse_tree("((a,b),c,d;", Mode::Unrooted);
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.position == 10);
  }
}

TEST_CASE("write and round trip") {
  auto t = caterpillar({"f", "e", "d", "c", "b", "a"});
  CHECK(write_tree(t) == write_tree(caterpillar({"a", "b", "c", "d", "e", "f"})));
  CHECK(write_tree(caterpillar({"b", "a"})) == "(a,b);");
  for (auto s : {"((a,b),c,(d,(e,f)));", "((c,b),a,(f,(e,d)));", "(a,b);"}) {
    auto x = parse_tree(s, Mode::Unrooted);
    CHECK(labelled_isomorphic(parse_tree(write_tree(x), Mode::Unrooted), x));
  }
  std::mt19937_64 rng(1);
  for (int it = 0; it < 100; ++it) {
    int n = 2 + int(rng() % 63);
    auto x = random_tree(n, rng);
    CHECK(labelled_isomorphic(parse_tree(write_tree(x), Mode::Unrooted), x));
    auto r = random_rooted_tree(n, rng);
    CHECK(labelled_isomorphic(parse_tree(write_tree(r), Mode::Rooted), r));
  }
}

TEST_CASE("multi-record files with names") {
  auto recs = parse_trees(read_file(data_path("example_pair.nwk")), Mode::Unrooted);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].name == "T1");
  CHECK(recs[1].name == "T2");
}

TEST_CASE("networks") {
  auto nu = parse_network(read_file(data_path("example_unrooted_net.txt")), Mode::Unrooted);
  CHECK(is_valid_unrooted(nu));
  CHECK(reticulation_number(nu) == 1);
  auto back = parse_network(write_network(nu), Mode::Unrooted);
  CHECK(back.num_edges() == nu.num_edges());
  CHECK(write_network(back) == write_network(nu));

  auto nr = parse_network(read_file(data_path("example_rooted_net.enwk")), Mode::Rooted);
  CHECK(is_valid_rooted(nr));
  CHECK(reticulation_number(nr) == 2);
  auto nr2 = parse_network(write_network(nr), Mode::Rooted);
  CHECK(reticulation_number(nr2) == 2);
  CHECK(write_network(nr2) == write_network(nr));

  CHECK_THROWS_AS(parse_network("unrooted-network\nc a\nc b\nc d\nc e\nleaf a x\nleaf b y\nleaf d z\nleaf e w\n",
                                Mode::Unrooted),
                  Error);
  CHECK_THROWS_AS(parse_network("((a,#H1),(b)#H2);", Mode::Rooted), Error);

  std::mt19937_64 rng(2);
  for (int it = 0; it < 60; ++it) {
    auto n = random_network(3 + int(rng() % 30), int(rng() % 4), rng);
    auto b = parse_network(write_network(n), Mode::Unrooted);
    CHECK(write_network(b) == write_network(n));
  }
}

TEST_CASE("dot export") {
  auto star = caterpillar({"x", "y", "z"});
  auto dot = export_dot(star);
  auto count = [&](const std::string& needle) {
    size_t c = 0;
    for (size_t p = dot.find(needle); p != std::string::npos; p = dot.find(needle, p + 1)) ++c;
    return c;
  };
  CHECK(count("[label=") == 4);
  CHECK(count(" -- ") == 3);
}

TEST_CASE("mutations that break balance or duplicate taxa are rejected") {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 100; ++it) {
    auto s = write_tree(random_tree(3 + int(rng() % 20), rng));
    std::vector<size_t> parens;
    for (size_t i = 0; i < s.size(); ++i)
      if (s[i] == '(' || s[i] == ')') parens.push_back(i);
    auto cut = s;
    cut.erase(parens[rng() % parens.size()], 1);
    CHECK_THROWS_AS(parse_tree(cut, Mode::Unrooted), ParseError);
    auto dup = s;
    size_t a = dup.find('a'), b = dup.find('b');
    dup[b] = 'a';
    (void)a;
    CHECK_THROWS_AS(parse_tree(dup, Mode::Unrooted), ParseError);
  }
}
