#include <random>

#include "doctest.h"
#include "phylonet/hn.hpp"
#include "phylonet/ruhn.hpp"
#include "phylonet/uhn.hpp"
#include "phylonet/utc.hpp"
#include "support.hpp"

using namespace phylonet;
using namespace testing_support;

namespace {

void check_solution(const RuhnSolution& s, const std::vector<Network>& trees) {
  CHECK(reticulation_number(s.network) == s.value);
  for (size_t i = 0; i < trees.size(); ++i) {
    CHECK(labelled_isomorphic(s.rooted[i], root_at_edge(trees[i], s.rootings[i])));
    CHECK(rooted_tc(s.network, s.rooted[i]));
  }
}

}  // namespace

TEST_CASE("root-uncertain number of the example trees") {
  auto example = parse_trees(read_file(data_path("example_pair.nwk")), Mode::Unrooted);
  std::vector<Network> s{example[0].net, example[1].net};
  auto sol = ruhn_exact(s, 3);
  REQUIRE(sol);
  CHECK(sol->value == 2);
  check_solution(*sol, s);
  CHECK_FALSE(ruhn_exact(s, 1));
}

TEST_CASE("identical trees need no reticulation") {
  auto t = parse_tree("((a,b),c,(d,e));", Mode::Unrooted);
  auto sol = ruhn_exact({t, t}, 2);
  REQUIRE(sol);
  CHECK(sol->value == 0);
  check_solution(*sol, {t, t});
}

TEST_CASE("inequality chain on random rooted pairs") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 20; ++it) {
    int n = 4 + int(rng() % 2);
    auto a = random_rooted_tree(n, rng), b = random_rooted_tree(n, rng);
    auto hr = hn_exact({a, b}, 3);
    REQUIRE(hr);
    auto ua = unroot(a), ub = unroot(b);
    auto hru = ruhn_exact({ua, ub}, 3);
    REQUIRE(hru);
    check_solution(*hru, {ua, ub});
    int hu = uhn_solve(ua, ub).value;
    CHECK(hu <= hru->value);
    CHECK(hru->value <= hr->value);
  }
}

TEST_CASE("kernel decisions agree with the unreduced instance") {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 12; ++it) {
    int n = 5 + int(rng() % 2);
    auto a = random_tree(n, rng), b = random_tree(n, rng);
    for (int k = 1; k <= 2; ++k) {
      auto ker = kernelize_ruhn({a, b}, k);
      bool full = ruhn_exact({a, b}, k).has_value();
      bool reduced = ker.decided ? *ker.decided : ruhn_exact(ker.trees, k).has_value();
      CHECK(full == reduced);
    }
  }
}

TEST_CASE("lifting through chain truncation") {
  // taxon a jumps across a long common chain
  auto a = caterpillar({"p", "q", "a", "c1", "c2", "c3", "c4", "c5", "c6", "c7", "r", "s"});
  auto b = caterpillar({"p", "q", "c1", "c2", "c3", "c4", "c5", "c6", "c7", "r", "a", "s"});
  auto ker = kernelize_ruhn({a, b}, 1);
  bool truncated = false;
  for (auto& st : ker.log.steps) truncated |= st.kind == Step::Kind::CC;
  CHECK(truncated);
  Guards g;
  g.hn_taxa = 10;
  auto sol = ruhn_exact({a, b}, 2, g);
  REQUIRE(sol);
  CHECK(sol->value == 1);
  check_solution(*sol, {a, b});
}
