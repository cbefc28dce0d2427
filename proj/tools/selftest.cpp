#include "selftest.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "phylonet/gadgets.hpp"
#include "phylonet/hn.hpp"
#include "phylonet/instances.hpp"
#include "phylonet/newick.hpp"
#include "phylonet/reduce.hpp"
#include "phylonet/ruhn.hpp"
#include "phylonet/uhn.hpp"
#include "phylonet/utc.hpp"

namespace phylonet {
namespace {

// pinned limits
constexpr double kExampleSeconds = 60;
constexpr double kRegressionSeconds = 5;
constexpr double kUtcSuiteSeconds = 600;
constexpr double kForestSeconds = 900;
constexpr double kCaterpillarSeconds = 1800;
constexpr int kUtcInstances = 500;
constexpr int kUtcMaxEdges = 24;
constexpr int kRuhnKernelRuns = 150;
constexpr int kForestPairs = 200;
constexpr int kChainPairs = 100;
constexpr int kCaterpillarRandomPairs = 20;
constexpr int kNdpInstances = 50;
constexpr int kNdpOracleEdges = 128;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double s) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(1) << s << " s";
  return o.str();
}

// collects failed checks; the first one is reported
struct Outcome {
  int failures = 0;
  std::string first;
  std::string detail;
  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (!failures++) first = what;
  }
};

int leaf_edge(const Network& t, const Taxon& x) {
  int v = t.leaf_of().at(x);
  for (int e = 0; e < t.num_edges(); ++e)
    if (t.edges[e].u == v || t.edges[e].v == v) return e;
  return -1;
}

bool ruhn_certificate_ok(const RuhnSolution& s, const std::vector<Network>& trees) {
  if (reticulation_number(s.network) != s.value || !is_valid_rooted(s.network)) return false;
  for (size_t i = 0; i < trees.size(); ++i) {
    if (!labelled_isomorphic(s.rooted[i], root_at_edge(trees[i], s.rootings[i]))) return false;
    if (!rooted_tc(s.network, s.rooted[i])) return false;
  }
  return true;
}

bool hn_certificate_ok(const HnSolution& s, const std::vector<Network>& trees) {
  if (reticulation_number(s.network) != s.value || !is_valid_rooted(s.network)) return false;
  for (auto& t : trees)
    if (!rooted_tc(s.network, t)) return false;
  return true;
}

struct Context {
  SelftestOptions opt;

  std::string path(const std::string& name) const { return opt.data_dir + "/" + name; }

  // the example pair, its two stated rootings and the three numbers
  struct Example {
    Network t1, t2, r1, r2;
    bool rootings_ok = false;
    int hu = -1, hru = -1, hr = -1;
    bool certified = true;
    double seconds = 0;
  };
  std::optional<Example> example;

  const Example& get_example() {
    if (example) return *example;
    auto t0 = Clock::now();
    Example ex;
    auto trees = parse_trees(read_file(path("example_pair.nwk")), Mode::Unrooted);
    auto rooted = parse_trees(read_file(path("example_rooted_pair.nwk")), Mode::Rooted);
    ex.t1 = trees.at(0).net, ex.t2 = trees.at(1).net;
    ex.r1 = rooted.at(0).net, ex.r2 = rooted.at(1).net;
    ex.rootings_ok = labelled_isomorphic(ex.r1, root_at_edge(ex.t1, leaf_edge(ex.t1, "a"))) &&
                     labelled_isomorphic(ex.r2, root_at_edge(ex.t2, leaf_edge(ex.t2, "e")));

    auto u = uhn_solve(ex.t1, ex.t2);
    ex.hu = u.value;
    ex.certified &= reticulation_number(u.network.net) == u.value;
    ex.certified &= is_agreement_forest(ex.t1, ex.t2, u.forest.blocks);
    ex.certified &= image_matches(u.network.net, u.network.img1, ex.t1);
    ex.certified &= image_matches(u.network.net, u.network.img2, ex.t2);

    auto ru = ruhn_exact({ex.t1, ex.t2}, 3);
    if (ru) {
      ex.hru = ru->value;
      ex.certified &= ruhn_certificate_ok(*ru, {ex.t1, ex.t2});
    }
    auto hr = hn_exact({ex.r1, ex.r2}, 3);
    if (hr) {
      ex.hr = hr->value;
      ex.certified &= hn_certificate_ok(*hr, {ex.r1, ex.r2});
    }
    ex.seconds = seconds_since(t0);
    example = ex;
    return *example;
  }

  // one caterpillar run: the rooted pair, h^r, h^ru of the caterpillar instance, back-map
  struct CaterpillarRun {
    std::string pair;
    int hr = -1, hru = -1;
    bool ruhn_certified = false;
    bool sensible = false, backmap_valid = false;
    int p = -1, q = -1, backmap_r = -1;
  };
  std::optional<std::vector<CaterpillarRun>> caterpillar;
  double caterpillar_seconds = 0;
  std::string caterpillar_error;

  const std::vector<CaterpillarRun>& get_caterpillar() {
    if (caterpillar) return *caterpillar;
    auto t0 = Clock::now();
    std::vector<std::pair<Network, Network>> pairs;
    std::vector<std::string> triples{"((a,b),c);", "((a,c),b);", "((b,c),a);"};
    for (auto& x : triples)
      for (auto& y : triples) pairs.push_back({parse_tree(x, Mode::Rooted), parse_tree(y, Mode::Rooted)});
    std::mt19937_64 rng(404);
    for (int i = 0; i < kCaterpillarRandomPairs; ++i) {
      auto a = random_rooted_tree(4, rng);
      auto b = random_rooted_tree(4, rng);
      pairs.push_back({a, b});
    }
    Guards g = default_guards();
    g.hn_taxa = std::max(g.hn_taxa, 14);  // 4 taxa plus two caterpillars of length 5
    std::vector<CaterpillarRun> runs;
    try {
      for (auto& [t1, t2] : pairs) {
        CaterpillarRun run;
        run.pair = write_tree(t1) + " " + write_tree(t2);
        auto h = hn_exact({t1, t2}, 3);
        if (h) run.hr = h->value;
        auto [u1, u2] = hn_to_ruhn(t1, t2);
        auto r = ruhn_exact({u1, u2}, run.hr + 1, g);
        if (r) {
          run.hru = r->value;
          run.ruhn_certified = ruhn_certificate_ok(*r, {u1, u2});
          auto bm = backmap_restriction(t1, t2, r->network, r->rooted[0], r->images[0], r->rooted[1], r->images[1]);
          run.sensible = bm.sensible;
          run.p = bm.p, run.q = bm.q;
          run.backmap_r = reticulation_number(bm.network);
          run.backmap_valid = is_valid_rooted(bm.network) && rooted_tc(bm.network, t1) && rooted_tc(bm.network, t2);
        }
        runs.push_back(run);
      }
    } catch (const Error& e) {
      caterpillar_error = e.what();
    }
    caterpillar_seconds = seconds_since(t0);
    caterpillar = runs;
    return *caterpillar;
  }
};

Outcome example_triple(Context& c) {
  Outcome o;
  auto& ex = c.get_example();
  o.check(ex.rootings_ok, "stated rootings do not match the fixture");
  o.check(ex.hu == 1, "h_u = " + std::to_string(ex.hu));
  o.check(ex.hru == 2, "h_ru = " + std::to_string(ex.hru));
  o.check(ex.hr == 3, "h_r = " + std::to_string(ex.hr));
  o.check(ex.certified, "a certificate failed to verify");
  o.check(ex.seconds < kExampleSeconds, "took " + fmt(ex.seconds));
  o.detail = "h_u=" + std::to_string(ex.hu) + " h_ru=" + std::to_string(ex.hru) + " h_r=" + std::to_string(ex.hr) +
             ", certificates verified (" + fmt(ex.seconds) + ", limit " + fmt(kExampleSeconds) + ")";
  return o;
}

Outcome chain_regression(Context& c) {
  Outcome o;
  auto t0 = Clock::now();
  auto n = parse_network(read_file(c.path("cycle_net.txt")), Mode::Unrooted);
  auto t = parse_tree(read_file(c.path("cycle_tree.nwk")), Mode::Unrooted);
  o.check(!utc_solve(n, t, false), "unkernelized solver says YES");
  o.check(!utc_solve(n, t, true), "kernelized solver says YES");
  o.check(!utc_oracle(n, t), "oracle says YES");
  auto chains = maximal_common_chains({n, t}, 3);
  o.check(chains.size() == 2, std::to_string(chains.size()) + " common chains instead of 2");
  bool truncated_yes = false;
  if (chains.size() == 2) {
    auto s = truncate_chain({n, t}, chains[0], 2);
    s = truncate_chain(s, chains[1], 2);
    truncated_yes = utc_solve(s[0], s[1]) && utc_oracle(s[0], s[1]).has_value();
  }
  o.check(truncated_yes, "length-2 truncation is not YES");
  auto k = kernelize_utc(n, t);
  bool kernel_no = k.decided ? !*k.decided : !utc_solve(k.n, k.t);
  o.check(kernel_no, "kernel flips the answer");
  double s = seconds_since(t0);
  o.check(s < kRegressionSeconds, "took " + fmt(s));
  o.detail = std::string("NO, truncation to 2 gives ") + (truncated_yes ? "YES" : "NO") + ", kernel keeps " +
             (kernel_no ? "NO" : "YES") + " (" + fmt(s) + ", limit " + fmt(kRegressionSeconds) + ")";
  return o;
}

// shared by the oracle equivalence and kernel bound criteria
struct UtcSuite {
  int yes = 0, no = 0, disagree = 0, bad_certificate = 0;
  int kernels = 0, violations = 0;
  double seconds = 0;
};

UtcSuite run_utc_suite() {
  UtcSuite s;
  auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  int done = 0;
  while (done < kUtcInstances) {
    int nt = 4 + int(rng() % 6), r = int(rng() % 4);
    auto n = random_network(nt, r, rng);
    if (n.num_edges() > kUtcMaxEdges) continue;
    auto t = rng() % 2 ? random_displayed_tree(n, rng) : random_tree(nt, rng);
    ++done;
    bool want = utc_oracle(n, t).has_value();
    bool agree = utc_subset_oracle(n, t).has_value() == want && utc_solve(n, t, false) == want &&
                 utc_solve(n, t, true) == want;
    s.disagree += !agree;
    (want ? s.yes : s.no)++;
    if (want) {
      auto img = utc_certificate(n, t);
      s.bad_certificate += !(img && image_matches(n, *img, t));
    }
    auto k = kernelize_utc(n, t);
    if (!k.decided) {
      ++s.kernels;
      int kk = reticulation_number(k.n);
      bool ok = int(k.n.taxa().size()) <= std::max(6 * kk, 4) && k.n.num_edges() <= std::max(15 * kk, 5);
      s.violations += !ok;
    }
  }
  s.seconds = seconds_since(t0);
  return s;
}

Outcome utc_equivalence(const UtcSuite& s) {
  Outcome o;
  o.check(s.disagree == 0, std::to_string(s.disagree) + " disagreements");
  o.check(s.bad_certificate == 0, std::to_string(s.bad_certificate) + " certificates failed");
  o.check(s.yes > 0 && s.no > 0, "suite lacks YES or NO instances");
  o.check(s.seconds < kUtcSuiteSeconds, "took " + fmt(s.seconds));
  o.detail = std::to_string(s.yes + s.no) + " instances (" + std::to_string(s.yes) + " YES, " + std::to_string(s.no) +
             " NO), " + std::to_string(s.disagree) + " disagreements (" + fmt(s.seconds) + ", limit " +
             fmt(kUtcSuiteSeconds) + ")";
  return o;
}

Outcome kernel_bounds(const UtcSuite& s) {
  Outcome o;
  o.check(s.violations == 0, std::to_string(s.violations) + " network kernels over the bound");
  // root-uncertain kernels: tree pairs displayed by a common network with k reticulations
  std::mt19937_64 rng(2002);
  int accepted = 0, rejected = 0, decided_yes = 0, violations = 0;
  for (int it = 0; it < kRuhnKernelRuns; ++it) {
    int nt = 8 + int(rng() % 33), r = 1 + int(rng() % 3);
    auto n = random_network(nt, r, rng);
    auto a = random_displayed_tree(n, rng);
    auto b = random_displayed_tree(n, rng);
    for (int k = 1; k <= 3; ++k) {
      auto ker = kernelize_ruhn({a, b}, k);
      if (ker.decided) {
        ++(*ker.decided ? decided_yes : rejected);
        continue;
      }
      ++accepted;
      for (auto& t : ker.trees) violations += int(t.taxa().size()) >= 20 * k * k;
    }
  }
  o.check(violations == 0, std::to_string(violations) + " root-uncertain kernels over the bound");
  o.check(accepted > 0, "no accept-path kernels");
  o.detail = std::to_string(s.kernels) + " network kernels, " + std::to_string(accepted) +
             " accept-path tree kernels (" + std::to_string(decided_yes) + " decided YES, " +
             std::to_string(rejected) + " rejected), " +
             std::to_string(s.violations + violations) + " violations";
  return o;
}

Outcome forest_crosscheck() {
  Outcome o;
  auto t0 = Clock::now();
  std::mt19937_64 rng(3003);
  Guards g = default_guards();
  g.oracle_edges = std::max(g.oracle_edges, 48);  // wired networks on 7 taxa reach 29 edges
  int oracle_runs = 0;
  std::map<int, int> hist;
  for (int it = 0; it < kForestPairs; ++it) {
    int nt = 3 + int(rng() % 5);
    auto a = random_tree(nt, rng);
    auto b = random_tree(nt, rng);
    auto f = maf_exact(a, b, false, g);
    int d = int(f.blocks.size()) - 1;
    ++hist[d];
    o.check(is_agreement_forest(a, b, f.blocks), "not an agreement forest");
    o.check(d == tbr_bfs_oracle(a, b, g), "forest size differs from TBR distance");
    auto w = network_from_forest(a, b, f);
    o.check(reticulation_number(w.net) == d, "wired network has the wrong reticulation number");
    o.check(utc_oracle(w.net, a, g).has_value() && utc_oracle(w.net, b, g).has_value(),
            "wired network does not display both trees");
    if (nt <= 6) {
      ++oracle_runs;
      o.check(uhn_exhaustive_oracle({a, b}, 2, g) == d, "exhaustive network oracle differs");
    }
  }
  double s = seconds_since(t0);
  o.check(s < kForestSeconds, "took " + fmt(s));
  std::string h;
  for (auto [d, cnt] : hist) h += (h.empty() ? "" : " ") + std::to_string(d) + ":" + std::to_string(cnt);
  o.detail = std::to_string(kForestPairs) + " pairs (distance histogram " + h + "), " + std::to_string(oracle_runs) +
             " checked by the network oracle (" + fmt(s) + ", limit " + fmt(kForestSeconds) + ")";
  return o;
}

Outcome inequality_chain(Context& c) {
  Outcome o;
  auto t0 = Clock::now();
  std::mt19937_64 rng(4004);
  int strict_both = 0;
  for (int it = 0; it < kChainPairs; ++it) {
    int nt = 3 + int(rng() % 3);
    auto a = random_rooted_tree(nt, rng);
    auto b = random_rooted_tree(nt, rng);
    auto hr = hn_exact({a, b}, 3);
    auto ua = unroot(a), ub = unroot(b);
    auto hru = ruhn_exact({ua, ub}, 3);
    int hu = uhn_solve(ua, ub).value;
    o.check(hr && hru, "no solution within k = 3");
    if (!hr || !hru) continue;
    o.check(hn_certificate_ok(*hr, {a, b}) && ruhn_certificate_ok(*hru, {ua, ub}), "certificate failed");
    o.check(hu <= hru->value && hru->value <= hr->value, "chain violated on " + write_tree(a) + " " + write_tree(b));
    strict_both += hu < hru->value && hru->value < hr->value;
  }
  auto& ex = c.get_example();
  bool example_strict = ex.hu == 1 && ex.hru == 2 && ex.hr == 3;
  o.check(example_strict, "example pair is not 1 < 2 < 3");
  double s = seconds_since(t0);
  o.detail = std::to_string(kChainPairs) + " pairs hold, " + std::to_string(strict_both) +
             " sampled with both strict, example " + std::to_string(ex.hu) + " < " + std::to_string(ex.hru) + " < " +
             std::to_string(ex.hr) + " (" + fmt(s) + ")";
  return o;
}

Outcome caterpillar_equality(Context& c) {
  Outcome o;
  auto& runs = c.get_caterpillar();
  o.check(c.caterpillar_error.empty(), "error: " + c.caterpillar_error);
  o.check(int(runs.size()) == 9 + kCaterpillarRandomPairs, "only " + std::to_string(runs.size()) + " runs");
  for (auto& r : runs) {
    o.check(r.hr >= 0, "no rooted solution for " + r.pair);
    o.check(r.hru == r.hr + 1, "h_ru = " + std::to_string(r.hru) + ", h_r = " + std::to_string(r.hr) + " on " + r.pair);
    o.check(r.ruhn_certified, "certificate failed on " + r.pair);
  }
  o.check(c.caterpillar_seconds < kCaterpillarSeconds, "took " + fmt(c.caterpillar_seconds));
  o.detail = std::to_string(runs.size()) + " pairs (9 on 3 taxa, " + std::to_string(kCaterpillarRandomPairs) +
             " on 4 taxa) (" + fmt(c.caterpillar_seconds) + ", limit " + fmt(kCaterpillarSeconds) + ")";
  return o;
}

Outcome backmap(Context& c) {
  Outcome o;
  auto& runs = c.get_caterpillar();
  o.check(c.caterpillar_error.empty(), "error: " + c.caterpillar_error);
  int sensible = 0;
  for (auto& r : runs) {
    if (r.hru < 0) {
      o.check(false, "no network to map back on " + r.pair);
      continue;
    }
    sensible += r.sensible;
    o.check(r.backmap_valid, "mapped network invalid on " + r.pair);
    o.check(r.backmap_r == r.hr, "mapped network has r = " + std::to_string(r.backmap_r) + ", h_r = " +
                                     std::to_string(r.hr) + " on " + r.pair);
    o.check(r.p < r.q, "p = " + std::to_string(r.p) + ", q = " + std::to_string(r.q) + " on " + r.pair);
  }
  o.detail = std::to_string(runs.size()) + " runs, " + std::to_string(sensible) + " sensible rootings";
  return o;
}

Outcome ndp_soundness() {
  Outcome o;
  auto t0 = Clock::now();
  std::mt19937_64 rng(5005);
  Guards g = default_guards();
  g.oracle_edges = std::max(g.oracle_edges, kNdpOracleEdges);
  int checked = 0, yes = 0, trivial = 0, oversized = 0;
  while (checked < kNdpInstances) {
    int v = 3 + int(rng() % 6);
    int p = 1 + int(rng() % 2);
    auto I = random_ndp(v, p, rng);
    bool want = ndp_oracle(I).has_value();
    try {
      auto u = ndp_to_utc(I);
      if (u.n.num_edges() > g.oracle_edges) {
        ++oversized;
        continue;
      }
      ++checked;
      yes += want;
      o.check(utc_oracle(u.n, u.t, g).has_value() == want, "disagreement on\n" + I.str());
    } catch (const TrivialNo&) {
      ++trivial;
      o.check(!want, "trivially NO instance has paths");
    }
  }
  o.check(yes > 0 && yes < checked, "suite lacks YES or NO instances");
  double s = seconds_since(t0);
  o.detail = std::to_string(checked) + " reduced instances (" + std::to_string(yes) + " YES), " +
             std::to_string(trivial) + " trivially NO, " + std::to_string(oversized) + " over " +
             std::to_string(g.oracle_edges) + " edges skipped (" + fmt(s) + ")";
  return o;
}

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char ch : s) q += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return q + "'";
}

// stdout and exit status of one CLI run
std::pair<std::string, int> run_cli(const std::string& cli, const std::string& args) {
  std::string cmd = shell_quote(cli) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {"", -1};
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int st = pclose(p);
  return {out, WIFEXITED(st) ? WEXITSTATUS(st) : -1};
}

Outcome determinism(Context& c) {
  Outcome o;
  if (c.opt.cli.empty()) {
    o.check(false, "no CLI binary given");
    return o;
  }
  auto t0 = Clock::now();
  auto d = [&](const std::string& f) { return shell_quote(c.path(f)); };
  struct Cmd {
    std::string args;
    int code;
    std::string prefix;
  };
  std::vector<Cmd> cmds{
      {"utc --network " + d("cycle_net.txt") + " --tree " + d("cycle_tree.nwk"), 1, "NO\n"},
      {"utc --network " + d("cycle_net.txt") + " --tree " + d("cycle_tree.nwk") + " --kernel --format log", 1, ""},
      {"utc --network " + d("example_unrooted_net.txt") + " --tree " + d("example_pair.nwk"), 0, "YES\n"},
      {"utc --network " + d("example_unrooted_net.txt") + " --tree " + d("example_pair.nwk") + " --format dot", 0, "graph"},
      {"uhn --trees " + d("example_pair.nwk"), 0, "h_u = 1\n"},
      {"uhn --trees " + d("example_pair.nwk") + " --format dot", 0, "graph"},
      {"ruhn --trees " + d("example_pair.nwk") + " --kmax 3", 0, "h_ru = 2\n"},
      {"ruhn --trees " + d("example_pair.nwk") + " --kmax 1", 1, ""},
      {"hn --trees " + d("example_rooted_pair.nwk") + " --kmax 3", 0, "h_r = 3\n"},
      {"kernelize --network " + d("cycle_net.txt") + " --tree " + d("cycle_tree.nwk"), 1, ""},
      {"kernelize --trees " + d("example_pair.nwk") + " --k 2", 0, ""},
      {"oracle --network " + d("cycle_net.txt") + " --tree " + d("cycle_tree.nwk"), 1, "NO\n"},
      {"oracle --kind tbr --trees " + d("example_pair.nwk"), 0, "d_TBR = 1\n"},
      {"oracle --kind uhn --trees " + d("example_pair.nwk"), 0, "h_u = 1\n"},
      {"oracle --kind ndp --ndp " + d("ndp/k4.ndp"), -1, ""},
      {"gen-ndp --ndp " + d("ndp/k4.ndp"), 0, "unrooted-network"},
      {"gen-ndp --seed 7 --nodes 6 --pairs 2 --format log", -1, ""},
      {"gen-lemma4 --trees " + d("example_rooted_pair.nwk"), 0, ""},
      {"gen-lemma4 --seed 3 --taxa 4 --long", 0, ""},
      {"export-dot --network " + d("example_rooted_net.enwk"), 0, "digraph"},
      {"export-dot --network " + d("cycle_net.txt"), 0, "graph"},
      {"uhn --trees " + d("example_rooted_pair.nwk"), 2, ""},
      {"hn --trees " + d("example_rooted_pair.nwk") + " --kmax 3 --max-taxa 3", 3, ""},
  };
  int identical = 0;
  for (auto& cmd : cmds) {
    auto a = run_cli(c.opt.cli, cmd.args + " --threads 1");
    auto b = run_cli(c.opt.cli, cmd.args + " --threads 3");
    bool same = a == b;
    identical += same;
    o.check(same, "output differs: " + cmd.args);
    if (cmd.code >= 0)
      o.check(a.second == cmd.code, "exit " + std::to_string(a.second) + " instead of " + std::to_string(cmd.code) +
                                        ": " + cmd.args);
    o.check(a.first.rfind(cmd.prefix, 0) == 0, "unexpected output: " + cmd.args);
  }
  double s = seconds_since(t0);
  o.detail = std::to_string(identical) + "/" + std::to_string(cmds.size()) +
             " commands byte-identical under --threads 1 and 3 (" + fmt(s) + ")";
  return o;
}

}  // namespace

int run_selftest(const SelftestOptions& opt, std::ostream& out) {
  Context c{opt, {}, {}, 0, {}};
  std::optional<UtcSuite> suite;
  auto utc_suite = [&]() -> const UtcSuite& {
    if (!suite) suite = run_utc_suite();
    return *suite;
  };
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "example triple", [&] { return example_triple(c); }},
      {2, "chain truncation regression", [&] { return chain_regression(c); }},
      {3, "containment oracle equivalence", [&] { return utc_equivalence(utc_suite()); }},
      {4, "kernel bounds", [&] { return kernel_bounds(utc_suite()); }},
      {5, "agreement forest cross-check", [&] { return forest_crosscheck(); }},
      {6, "inequality chain", [&] { return inequality_chain(c); }},
      {7, "caterpillar reduction adds one", [&] { return caterpillar_equality(c); }},
      {8, "back-map", [&] { return backmap(c); }},
      {9, "disjoint paths gadgets", [&] { return ndp_soundness(); }},
      {10, "determinism", [&] { return determinism(c); }},
  };
  int failed = 0;
  for (auto& cr : all) {
    if (!opt.only.empty() && !opt.only.count(cr.id)) continue;
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    bool pass = o.failures == 0;
    failed += !pass;
    out << (pass ? "PASS" : "FAIL") << " " << std::setw(2) << cr.id << " " << cr.name << ": " << o.detail;
    if (!pass) out << " [" << o.failures << " failed checks; first: " << o.first << "]";
    out << std::endl;
  }
  return failed;
}

}  // namespace phylonet
