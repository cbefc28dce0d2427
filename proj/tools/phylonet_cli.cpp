#include <unistd.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "phylonet/gadgets.hpp"
#include "phylonet/guards.hpp"
#include "phylonet/hn.hpp"
#include "phylonet/instances.hpp"
#include "phylonet/newick.hpp"
#include "phylonet/reduce.hpp"
#include "phylonet/ruhn.hpp"
#include "phylonet/uhn.hpp"
#include "phylonet/utc.hpp"
#include "selftest.hpp"

using namespace phylonet;

namespace {

enum Exit { kYes = 0, kNo = 1, kUsage = 2, kGuard = 3, kInternal = 4 };

// a certificate that fails its independent check
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void verify(bool ok, const std::string& what) {
  if (!ok) throw VerificationFailure("certificate check failed: " + what);
}

struct Options {
  int threads = 1;
  std::string format = "text";
  uint64_t seed = 1;
  int max_taxa = 0, max_k = 0, oracle_edges = 0;
  std::vector<std::string> guard;

  std::string network, tree, trees, ndp;
  std::string kind = "utc";
  int kmax = 3;
  int k = -1;
  bool kernel = false, bounded = false, long_cats = false;
  int nodes = 6, pairs = 2, taxa = 4;
  std::string network_out, tree_out;

  std::string data_dir = PHYLONET_DATA_DIR;
  std::string cli;
  std::vector<int> criteria;
};

void apply_guards(const Options& o) {
  Guards& g = default_guards();
  if (o.max_taxa > 0) g.hn_taxa = o.max_taxa;
  if (o.max_k > 0) g.hn_k = o.max_k;
  if (o.oracle_edges > 0) g.oracle_edges = o.oracle_edges;
  std::map<std::string, int*> field{{"oracle_edges", &g.oracle_edges}, {"maf_taxa", &g.maf_taxa},
                                    {"tbr_taxa", &g.tbr_taxa},         {"hn_taxa", &g.hn_taxa},
                                    {"hn_k", &g.hn_k},                 {"uhn_oracle_taxa", &g.uhn_oracle_taxa},
                                    {"uhn_oracle_k", &g.uhn_oracle_k}, {"generator_r", &g.generator_r}};
  for (auto& kv : o.guard) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || !field.count(kv.substr(0, eq)))
      throw CLI::ValidationError("--guard", "expected NAME=VALUE with a known guard name: " + kv);
    int v = 0;
    try {
      v = std::stoi(kv.substr(eq + 1));
    } catch (const std::exception&) {
      v = 0;
    }
    if (v <= 0) throw CLI::ValidationError("--guard", "guard values must be positive: " + kv);
    *field[kv.substr(0, eq)] = v;
  }
}

std::string with_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

std::string edge_ids(const Image& img) {
  std::string s;
  for (int e : img.edges) s += " " + std::to_string(e);
  return s;
}

std::string tree_name(const std::vector<Record>& recs, size_t i) {
  return recs[i].name.empty() ? "T" + std::to_string(i + 1) : recs[i].name;
}

Network read_unrooted_network(const std::string& path) { return parse_network(read_file(path), Mode::Unrooted); }

Network read_tree(const std::string& path) {
  auto recs = parse_trees(read_file(path), Mode::Unrooted);
  if (recs.empty()) throw Error(path + ": no tree");
  return recs[0].net;
}

std::vector<Record> read_trees(const std::string& path, Mode mode, size_t at_least) {
  auto recs = parse_trees(read_file(path), mode);
  if (recs.size() < at_least) throw Error(path + ": expected at least " + std::to_string(at_least) + " trees");
  return recs;
}

// rooted eNewick or the unrooted edge-list format, decided by the first token
Network read_any_network(const std::string& path) {
  std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    if (line.compare(p, 16, "unrooted-network") == 0) return parse_network(text, Mode::Unrooted);
    break;
  }
  try {
    return parse_network(text, Mode::Rooted);
  } catch (const Error&) {
    return parse_tree(text, Mode::Unrooted);
  }
}

int cmd_utc(const Options& o) {
  Network n = read_unrooted_network(o.network);
  Network t = read_tree(o.tree);
  std::string out;
  if (o.format == "log") out += kernelize_utc(n, t).log.str();
  bool yes = utc_solve(n, t, o.kernel);
  if (!yes) {
    std::cout << out << (o.format == "dot" ? export_dot(n) : "NO\n");
    return kNo;
  }
  auto img = utc_certificate(n, t);
  verify(img && image_matches(n, *img, t), "image does not reproduce the tree");
  if (o.format == "dot") {
    std::cout << export_dot(n, *img);
  } else {
    std::cout << out << "YES\nimage" << edge_ids(*img) << "\n";
  }
  return kYes;
}

int cmd_uhn(const Options& o) {
  auto recs = read_trees(o.trees, Mode::Unrooted, 2);
  const Network &t1 = recs[0].net, &t2 = recs[1].net;
  auto sol = uhn_solve(t1, t2, default_guards());
  verify(is_agreement_forest(t1, t2, sol.forest.blocks), "not an agreement forest");
  // image ids refer to the network as printed
  std::string text = write_network(sol.network.net);
  Network net = parse_network(text, Mode::Unrooted);
  verify(reticulation_number(net) == sol.value, "reticulation number");
  std::vector<Image> imgs;
  for (auto* t : {&t1, &t2}) {
    auto img = utc_certificate(net, *t);
    verify(img && image_matches(net, *img, *t), "network does not display an input tree");
    imgs.push_back(*img);
  }
  if (o.format == "dot") {
    std::cout << export_dot(net);
    return kYes;
  }
  std::cout << "h_u = " << sol.value << "\nforest";
  for (auto& b : sol.forest.blocks) {
    std::string s;
    for (auto& x : b) s += (s.empty() ? "" : ",") + x;
    std::cout << " {" << s << "}";
  }
  std::cout << "\n" << with_newline(text);
  for (size_t i = 0; i < 2; ++i) std::cout << "image " << tree_name(recs, i) << edge_ids(imgs[i]) << "\n";
  return kYes;
}

int cmd_hn(const Options& o) {
  auto recs = read_trees(o.trees, Mode::Rooted, 1);
  std::vector<Network> trees;
  for (auto& r : recs) trees.push_back(r.net);
  auto sol = hn_exact(trees, o.kmax, default_guards());
  if (!sol) {
    std::cout << "NO (h_r > " << o.kmax << ")\n";
    return kNo;
  }
  std::string text = write_network(sol->network);
  Network net = parse_network(text, Mode::Rooted);
  verify(is_valid_rooted(net) && reticulation_number(net) == sol->value, "network shape");
  std::vector<Image> imgs;
  for (auto& t : trees) {
    auto img = rooted_tc(net, t);
    verify(img.has_value(), "network does not display an input tree");
    imgs.push_back(*img);
  }
  if (o.format == "dot") {
    std::cout << export_dot(net);
    return kYes;
  }
  std::cout << "h_r = " << sol->value << "\n" << with_newline(text);
  for (size_t i = 0; i < trees.size(); ++i) std::cout << "image " << tree_name(recs, i) << edge_ids(imgs[i]) << "\n";
  return kYes;
}

int cmd_ruhn(const Options& o) {
  auto recs = read_trees(o.trees, Mode::Unrooted, 1);
  std::vector<Network> trees;
  for (auto& r : recs) trees.push_back(r.net);
  auto sol = ruhn_exact(trees, o.kmax, default_guards());
  if (!sol) {
    std::cout << "NO (h_ru > " << o.kmax << ")\n";
    return kNo;
  }
  std::string text = write_network(sol->network);
  Network net = parse_network(text, Mode::Rooted);
  verify(is_valid_rooted(net) && reticulation_number(net) == sol->value, "network shape");
  std::vector<Image> imgs;
  for (size_t i = 0; i < trees.size(); ++i) {
    verify(labelled_isomorphic(sol->rooted[i], root_at_edge(trees[i], sol->rootings[i])), "rooting");
    auto img = rooted_tc(net, sol->rooted[i]);
    verify(img.has_value(), "network does not display a rooted input tree");
    imgs.push_back(*img);
  }
  if (o.format == "dot") {
    std::cout << export_dot(net);
    return kYes;
  }
  std::cout << "h_ru = " << sol->value << "\n";
  for (size_t i = 0; i < trees.size(); ++i)
    std::cout << "root " << tree_name(recs, i) << " " << describe_split(trees[i], sol->rootings[i]) << "\n";
  std::cout << with_newline(text);
  for (size_t i = 0; i < trees.size(); ++i) std::cout << "image " << tree_name(recs, i) << edge_ids(imgs[i]) << "\n";
  return kYes;
}

int cmd_kernelize(const Options& o) {
  if (!o.trees.empty()) {
    if (o.k < 0) throw CLI::ValidationError("--k", "required with --trees");
    auto recs = read_trees(o.trees, Mode::Unrooted, 1);
    std::vector<Network> trees;
    for (auto& r : recs) trees.push_back(r.net);
    auto ker = kernelize_ruhn(trees, o.k);
    std::cout << ker.log.str();
    if (ker.decided) {
      std::cout << "decided " << (*ker.decided ? "YES" : "NO") << "\n";
      return *ker.decided ? kYes : kNo;
    }
    for (size_t i = 0; i < ker.trees.size(); ++i)
      std::cout << tree_name(recs, i) << " = " << with_newline(write_tree(ker.trees[i]));
    return kYes;
  }
  if (o.network.empty() || o.tree.empty()) throw CLI::ValidationError("kernelize", "needs --trees or --network/--tree");
  auto ker = kernelize_utc(read_unrooted_network(o.network), read_tree(o.tree));
  std::cout << ker.log.str();
  if (ker.decided) {
    std::cout << "decided " << (*ker.decided ? "YES" : "NO") << "\n";
    return *ker.decided ? kYes : kNo;
  }
  std::cout << with_newline(write_network(ker.n)) << with_newline(write_tree(ker.t));
  return kYes;
}

int cmd_oracle(const Options& o) {
  if (o.kind == "utc") {
    Network n = read_unrooted_network(o.network);
    Network t = read_tree(o.tree);
    auto img = utc_oracle(n, t, default_guards());
    if (!img) {
      std::cout << "NO\n";
      return kNo;
    }
    verify(image_matches(n, *img, t), "oracle image");
    std::cout << "YES\nimage" << edge_ids(*img) << "\n";
    return kYes;
  }
  if (o.kind == "ndp") {
    auto I = parse_ndp(read_file(o.ndp));
    auto paths = ndp_oracle(I);
    if (!paths) {
      std::cout << "NO\n";
      return kNo;
    }
    std::cout << "YES\n";
    for (auto& p : *paths) {
      std::cout << "path";
      for (int v : p) std::cout << " " << I.nodes[v];
      std::cout << "\n";
    }
    return kYes;
  }
  auto recs = read_trees(o.trees, Mode::Unrooted, 2);
  if (o.kind == "tbr") {
    std::cout << "d_TBR = " << tbr_bfs_oracle(recs[0].net, recs[1].net, default_guards()) << "\n";
    return kYes;
  }
  std::vector<Network> trees;
  for (auto& r : recs) trees.push_back(r.net);
  int k = std::min(o.kmax, default_guards().uhn_oracle_k);
  auto v = uhn_exhaustive_oracle(trees, k, default_guards());
  if (!v) {
    std::cout << "NO (h_u > " << k << ")\n";
    return kNo;
  }
  std::cout << "h_u = " << *v << "\n";
  return kYes;
}

int cmd_gen_ndp(const Options& o) {
  NdpInstance I;
  if (!o.ndp.empty()) {
    I = parse_ndp(read_file(o.ndp));
  } else {
    if (o.nodes < 2 || o.pairs < 1) throw CLI::ValidationError("gen-ndp", "need --nodes >= 2 and --pairs >= 1");
    std::mt19937_64 rng(o.seed);
    I = random_ndp(o.nodes, o.pairs, rng);
  }
  auto comment = [](const std::string& text) {
    std::istringstream in(text);
    std::string line, s;
    while (std::getline(in, line)) s += "# " + line + "\n";
    return s;
  };
  if (o.format == "log") std::cout << "# instance\n" << comment(I.str());
  UtcInstance u;
  try {
    u = ndp_to_utc(I);
  } catch (const TrivialNo& e) {
    std::cout << "NO (" << e.what() << ")\n";
    return kNo;
  }
  validate_unrooted(u.n);
  validate_unrooted(u.t, true);
  verify(u.n.taxa() == u.t.taxa(), "taxa of the generated pair");
  if (o.format == "log") std::cout << "# normalized\n" << comment(u.normalized.str());
  std::string net = with_newline(write_network(u.n)), tree = with_newline(write_tree(u.t));
  auto save = [](const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!(f << text)) throw Error("cannot write " + path);
  };
  if (!o.network_out.empty()) save(o.network_out, net);
  if (!o.tree_out.empty()) save(o.tree_out, tree);
  std::cout << net << tree;
  return kYes;
}

int cmd_gen_lemma4(const Options& o) {
  Network t1, t2;
  if (!o.trees.empty()) {
    auto recs = read_trees(o.trees, Mode::Rooted, 2);
    t1 = recs[0].net, t2 = recs[1].net;
  } else {
    if (o.taxa < 2) throw CLI::ValidationError("--taxa", "at least 2");
    std::mt19937_64 rng(o.seed);
    t1 = random_rooted_tree(o.taxa, rng);
    t2 = random_rooted_tree(o.taxa, rng);
  }
  auto [u1, u2] = hn_to_ruhn(t1, t2, o.long_cats);
  std::cout << "[rooted pair: " << write_tree(t1) << " " << write_tree(t2) << "]\n";
  std::cout << "T1* = " << with_newline(write_tree(u1)) << "T2* = " << with_newline(write_tree(u2));
  return kYes;
}

int cmd_export_dot(const Options& o) {
  std::cout << export_dot(read_any_network(o.network));
  return kYes;
}

std::string self_path() {
  char buf[4096];
  ssize_t n = readlink("/proc/self/exe", buf, sizeof buf - 1);
  return n > 0 ? std::string(buf, size_t(n)) : std::string();
}

int cmd_selftest(const Options& o) {
  SelftestOptions st;
  st.data_dir = o.data_dir;
  st.cli = o.cli.empty() ? self_path() : o.cli;
  st.only.insert(o.criteria.begin(), o.criteria.end());
  return run_selftest(st, std::cout) == 0 ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree containment and hybridization number solvers"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "worker threads (never changes output)")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "dot", "log"}));
  app.add_option("--seed", o.seed, "seed for instance generation");
  app.add_option("--max-taxa", o.max_taxa, "guard: taxa per generator search")->check(CLI::PositiveNumber);
  app.add_option("--max-k", o.max_k, "guard: reticulations for the rooted solver")->check(CLI::PositiveNumber);
  app.add_option("--oracle-edges", o.oracle_edges, "guard: network edges for the containment oracle")
      ->check(CLI::PositiveNumber);
  app.add_option("--guard", o.guard, "guard override NAME=VALUE (repeatable)");

  auto* utc = app.add_subcommand("utc", "unrooted tree containment");
  utc->add_option("--network", o.network, "unrooted network file")->required();
  utc->add_option("--tree", o.tree, "tree file (first tree is used)")->required();
  utc->add_flag("--kernel", o.kernel, "kernelize before branching");

  auto* uhn = app.add_subcommand("uhn", "unrooted hybridization number of two trees");
  uhn->add_option("--trees", o.trees, "file with two unrooted trees")->required();

  auto* hn = app.add_subcommand("hn", "rooted hybridization number");
  hn->add_option("--trees", o.trees, "file with rooted trees")->required();
  hn->add_option("--kmax", o.kmax, "largest k tried")->check(CLI::NonNegativeNumber);

  auto* ruhn = app.add_subcommand("ruhn", "root-uncertain hybridization number");
  ruhn->add_option("--trees", o.trees, "file with unrooted trees")->required();
  ruhn->add_option("--kmax", o.kmax, "largest k tried")->check(CLI::NonNegativeNumber);

  auto* ker = app.add_subcommand("kernelize", "apply the reduction rules");
  ker->add_option("--network", o.network, "unrooted network file");
  ker->add_option("--tree", o.tree, "tree file");
  ker->add_option("--trees", o.trees, "unrooted trees (root-uncertain kernel)");
  ker->add_option("--k", o.k, "parameter for the root-uncertain kernel")->check(CLI::NonNegativeNumber);

  auto* ora = app.add_subcommand("oracle", "brute-force oracles");
  ora->add_option("--kind", o.kind, "which oracle")->check(CLI::IsMember({"utc", "tbr", "uhn", "ndp"}));
  ora->add_option("--network", o.network, "unrooted network file (utc)");
  ora->add_option("--tree", o.tree, "tree file (utc)");
  ora->add_option("--trees", o.trees, "unrooted trees (tbr, uhn)");
  ora->add_option("--ndp", o.ndp, "disjoint paths instance (ndp)");
  ora->add_option("--kmax", o.kmax, "largest k tried (uhn)")->check(CLI::NonNegativeNumber);

  auto* gen = app.add_subcommand("gen-ndp", "containment instance from a disjoint paths instance");
  gen->add_option("--ndp", o.ndp, "instance file; random when absent");
  gen->add_option("--nodes", o.nodes, "random instance: nodes");
  gen->add_option("--pairs", o.pairs, "random instance: terminal pairs");
  gen->add_option("--network-out", o.network_out, "also write the network here");
  gen->add_option("--tree-out", o.tree_out, "also write the tree here");

  auto* lem = app.add_subcommand("gen-lemma4", "unrooted caterpillar pair from two rooted trees");
  lem->add_option("--trees", o.trees, "file with two rooted trees; random when absent");
  lem->add_option("--taxa", o.taxa, "random instance: taxa");
  lem->add_flag("--long", o.long_cats, "caterpillars of length 2n+3");

  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of a network or tree");
  dot->add_option("--network", o.network, "network or tree file")->required();

  auto* st = app.add_subcommand("selftest", "run the acceptance criteria");
  st->add_option("--criteria", o.criteria, "criteria to run (default all)")->delimiter(',');
  st->add_option("--data", o.data_dir, "fixture directory");
  st->add_option("--cli", o.cli, "CLI binary for the determinism check (default: this one)");

  try {
    app.parse(argc, argv);
    apply_guards(o);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  set_threads(o.threads);

  try {
    if (*utc) return cmd_utc(o);
    if (*uhn) return cmd_uhn(o);
    if (*hn) return cmd_hn(o);
    if (*ruhn) return cmd_ruhn(o);
    if (*ker) return cmd_kernelize(o);
    if (*ora) return cmd_oracle(o);
    if (*gen) return cmd_gen_ndp(o);
    if (*lem) return cmd_gen_lemma4(o);
    if (*dot) return cmd_export_dot(o);
    if (*st) return cmd_selftest(o);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return kGuard;
  } catch (const VerificationFailure& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
