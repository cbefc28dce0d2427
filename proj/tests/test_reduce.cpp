#include <map>
#include <random>

#include "doctest.h"
#include "phylonet/reduce.hpp"
#include "phylonet/utc.hpp"
#include "support.hpp"

using namespace phylonet;
using namespace testing_support;

namespace {

Network cycle_network() { return parse_network(read_file(data_path("cycle_net.txt")), Mode::Unrooted); }
Network cycle_tree() { return parse_tree(read_file(data_path("cycle_tree.nwk")), Mode::Unrooted); }

Network cycle_network(const std::vector<Taxon>& order) {
  Network n;
  int k = int(order.size());
  std::vector<int> p(k);
  for (int i = 0; i < k; ++i) p[i] = n.add_node();
  for (int i = 0; i < k; ++i) {
    n.add_edge(p[i], p[(i + 1) % k]);
    n.add_edge(p[i], n.add_node(order[i]));
  }
  return n;
}

bool oracle(const Network& n, const Network& t) { return utc_oracle(n, t).has_value(); }

}  // namespace

TEST_CASE("common pendant subtree") {
  auto c1 = caterpillar({"a", "b", "c", "d", "e", "f"});
  auto c2 = caterpillar({"a", "b", "c", "f", "e", "d"});
  auto p = find_common_pendant_subtree({c1, c2});
  REQUIRE(p);
  CHECK(p->taxa == TaxonSet{"a", "b", "c"});
  CHECK(canonical_rooted(p->shape) == "((a,b),c)");
  ReductionLog log;
  auto r = apply_cps({c1, c2}, *p, "__x1", &log);
  CHECK(r[0].taxa() == TaxonSet{"__x1", "d", "e", "f"});
  CHECK(is_valid_unrooted(r[0], true));
  CHECK(is_valid_unrooted(r[1], true));
  CHECK(log.str() == "CPS a,b,c -> __x1 shape ((a,b),c)\n");
  // re-expansion restores both trees
  CHECK(labelled_isomorphic(expand_cps(r[0], log.steps[0]), c1));
  CHECK(labelled_isomorphic(expand_cps(r[1], log.steps[0]), c2));

  auto example = parse_trees(read_file(data_path("example_pair.nwk")), Mode::Unrooted);
  CHECK_FALSE(find_common_pendant_subtree({example[0].net, example[1].net}));

  auto same = find_common_pendant_subtree({c1, c1});
  REQUIRE(same);
  CHECK(same->whole);
  auto one = apply_cps({c1, c1}, *same, "__x1");
  CHECK(one[0].num_nodes() == 1);
  CHECK(one[1].taxa() == TaxonSet{"__x1"});
}

TEST_CASE("exhaustive pendant-subtree check on the inequality example") {
  auto example = parse_trees(read_file(data_path("example_pair.nwk")), Mode::Unrooted);
  // every pendant set of T1 is either missing from T2 or rooted differently
  auto a = pendant_taxon_sets(example[0].net), b = pendant_taxon_sets(example[1].net);
  int shared = 0;
  for (auto& s : a)
    for (auto& t : b)
      if (s == t) ++shared;
  CHECK(shared == 8);  // {a,b,c}, {d,e,f} and the six leaf complements
}

TEST_CASE("chains") {
  auto c1 = caterpillar({"a", "b", "c", "d", "e", "f"});
  CHECK(has_chain(c1, {"a", "b", "c", "d", "e", "f"}));
  CHECK(has_chain(c1, {"f", "e", "d"}));
  CHECK(has_chain(c1, {"b", "a", "c"}));
  CHECK_FALSE(has_chain(c1, {"a", "c", "b"}));
  auto n = cycle_network();
  CHECK(has_chain(n, {"d", "e", "f", "a", "b", "c"}));
  CHECK_FALSE(has_chain(n, {"a", "b", "c", "d", "e", "f", "a"}));
  auto c = find_common_chain({n, cycle_tree()}, 2);
  REQUIRE(c);
  CHECK(c->taxa == std::vector<Taxon>{"a", "b", "c"});
}

TEST_CASE("chain truncation") {
  auto n = cycle_network();
  auto t = cycle_tree();
  CHECK_FALSE(oracle(n, t));
  CHECK_FALSE(apply_dcc({n, t}, 3));
  ReductionLog log;
  auto chains = maximal_common_chains({n, t}, 3);
  REQUIRE(chains.size() == 2);
  auto once = apply_dcc({n, t}, 2, &log);
  REQUIRE(once);
  auto twice = std::optional(truncate_chain(*once, chains[1], 2, &log));
  CHECK(log.str() == "CC a,b,c keep 2\nCC d,e,f keep 2\n");
  CHECK((*twice)[0].taxa() == TaxonSet{"a", "b", "d", "e"});
  CHECK(oracle((*twice)[0], (*twice)[1]));  // truncating to two flips NO into YES
  CHECK(utc_solve((*twice)[0], (*twice)[1]));

  auto long1 = caterpillar({"a", "b", "c", "d", "e", "f", "g"});
  auto long2 = caterpillar({"a", "b", "c", "d", "e", "f", "g"});
  // identical caterpillars still have a common chain of length 7
  auto r = apply_dcc({long1, long2}, 5);
  REQUIRE(r);
  CHECK((*r)[0].taxa().size() == 5);
}

TEST_CASE("network chain rule cases") {
  // case 1: a seven-cycle cannot display a tree without a long common chain
  auto n7 = cycle_network({"a", "b", "c", "d", "e", "f", "g"});
  auto t7 = caterpillar({"a", "c", "b", "d", "f", "e", "g"});
  ReductionLog log;
  auto out = apply_nc(n7, t7, &log);
  CHECK(out.kind == NcOutcome::Kind::No);
  CHECK(out.nc_case == 1);
  CHECK(log.steps.empty());
  CHECK_FALSE(oracle(n7, t7));

  // case 2 on a six-cycle whose tree has pendant chains (x1,x2,x3), (x4,x5,x6)
  auto n6 = cycle_network({"a", "b", "c", "d", "e", "f"});
  auto t6 = caterpillar({"a", "b", "c", "f", "e", "d"});
  log = {};
  out = apply_nc(n6, t6, &log);
  REQUIRE(out.kind == NcOutcome::Kind::Applied);
  CHECK(log.steps.back().nc_case == 2);
  CHECK(log.steps.back().what == "e34");
  CHECK(oracle(n6, t6) == oracle(out.n, out.t));
}

TEST_CASE("network chain rule on a three-chain with a pendant tree triple") {
  // theta graph: two degree-3 nodes joined by three paths, taxa a,b,c on one
  // path, d,e on the second, f on the third
  Network n;
  int u = n.add_node(), v = n.add_node();
  auto path = [&](std::vector<Taxon> xs) {
    int prev = u;
    for (auto& x : xs) {
      int p = n.add_node();
      n.add_edge(prev, p);
      n.add_edge(p, n.add_node(x));
      prev = p;
    }
    n.add_edge(prev, v);
  };
  path({"a", "b", "c"});
  path({"d", "e"});
  path({"f"});
  REQUIRE(is_valid_unrooted(n));
  auto t = parse_tree("((a,b),c,(d,(e,f)));", Mode::Unrooted);
  ReductionLog log;
  auto out = apply_nc(n, t, &log);
  REQUIRE(out.kind == NcOutcome::Kind::Applied);
  CHECK(log.steps.back().nc_case == 5);
  CHECK(log.steps.back().what == "e1");
  CHECK(oracle(n, t) == oracle(out.n, out.t));
}

TEST_CASE("kernelization decisions on small fixed instances") {
  auto c = caterpillar({"a", "b", "c", "d", "e"});
  auto k = kernelize_utc(c, c);
  REQUIRE(k.decided);
  CHECK(*k.decided);
  auto kc = kernelize_utc(cycle_network(), cycle_tree());
  REQUIRE(kc.decided);
  CHECK_FALSE(*kc.decided);
  CHECK(kc.t.taxa().size() == 4);
}

TEST_CASE("kernelization preserves answers step by step") {
  std::mt19937_64 rng(2024);
  std::map<int, int> nc_cases;
  int yes = 0, total = 0;
  for (int it = 0; it < 300; ++it) {
    int nt = 4 + int(rng() % 6), r = 1 + int(rng() % 2);
    auto n = random_network(nt, r, rng);
    if (n.num_edges() > 24) continue;
    auto t = rng() % 2 ? random_displayed_tree(n, rng) : random_tree(nt, rng);
    bool want = oracle(n, t);
    yes += want;
    ++total;
    auto k = kernelize_utc(n, t);
    if (k.decided) CHECK(*k.decided == want);
    else CHECK(oracle(k.n, k.t) == want);
    // replay every prefix of the log and compare answers
    ReductionLog prefix;
    for (auto& st : k.log.steps) {
      if (st.kind == Step::Kind::Decide) break;
      if (st.kind == Step::Kind::NC) ++nc_cases[st.nc_case];
      prefix.steps.push_back(st);
      auto cur = replay_forward({n, t}, prefix);
      CHECK(oracle(cur[0], cur[1]) == want);
    }
    // size bounds of non-trivial kernels
    if (!k.decided) {
      int kk = reticulation_number(k.n);
      CHECK(int(k.n.taxa().size()) <= std::max(6 * kk, 4));
      CHECK(k.n.num_edges() <= std::max(15 * kk, 5));
    }
  }
  CHECK(total > 200);
  CHECK(yes > 50);
  std::string hits;
  for (auto& [c, cnt] : nc_cases) hits += " case" + std::to_string(c) + "=" + std::to_string(cnt);
  MESSAGE("network chain cases hit:" << hits);
}

TEST_CASE("ruhn kernel") {
  auto c = caterpillar({"a", "b", "c", "d", "e"});
  for (int k = 0; k <= 2; ++k) {
    auto r = kernelize_ruhn({c, c}, k);
    REQUIRE(r.decided);
    CHECK(*r.decided);
  }
  auto example = parse_trees(read_file(data_path("example_pair.nwk")), Mode::Unrooted);
  auto r = kernelize_ruhn({example[0].net, example[1].net}, 2);
  CHECK_FALSE(r.decided);
  CHECK(r.log.steps.empty());
  CHECK(labelled_isomorphic(r.trees[0], example[0].net));
  CHECK(labelled_isomorphic(r.trees[1], example[1].net));
  auto r0 = kernelize_ruhn({example[0].net, example[1].net}, 0);
  REQUIRE(r0.decided);
  CHECK_FALSE(*r0.decided);
}
