#include "phylonet/reduce.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>
#include <map>
#include <sstream>

namespace phylonet {

namespace {

std::string join(const std::vector<Taxon>& v) {
  std::string s;
  for (auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

// lexicographic order on taxon sets, smallest minimum taxon first
bool before(const std::vector<Taxon>& a, const std::vector<Taxon>& b) {
  auto ma = *std::min_element(a.begin(), a.end()), mb = *std::min_element(b.begin(), b.end());
  if (ma != mb) return ma < mb;
  return a < b;
}

struct Side {
  TaxonSet taxa;
  std::string shape;
  int edge, start;
};

std::vector<Side> pendant_sides(const Network& n) {
  std::vector<Side> out;
  if (n.num_nodes() < 3) return out;
  auto inc = n.incidence();
  auto br = bridges(n);
  TaxonSet all = n.taxa();
  for (int e = 0; e < n.num_edges(); ++e) {
    if (!br[e]) continue;
    for (int start : {n.edges[e].v, n.edges[e].u}) {
      auto in = reach_without(n, inc, start, e);
      int nodes = 0, edges = 0;
      TaxonSet tx;
      for (int v = 0; v < n.num_nodes(); ++v)
        if (in[v]) {
          ++nodes;
          if (!n.labels[v].empty()) tx.insert(n.labels[v]);
        }
      for (int f = 0; f < n.num_edges(); ++f)
        if (f != e && in[n.edges[f].u] && in[n.edges[f].v]) ++edges;
      if (edges != nodes - 1 || tx.size() < 2 || tx.size() == all.size()) continue;
      out.push_back({tx, canonical_subtree(n, inc, start, e), e, start});
    }
  }
  return out;
}

// rooted copy of the side of `e` containing `start`
Network side_tree(const Network& n, int e, int start) {
  auto inc = n.incidence();
  Network r;
  r.rooted = true;
  std::map<int, int> id;
  std::vector<std::pair<int, int>> st{{start, e}};
  id[start] = r.add_node(n.labels[start]);
  while (!st.empty()) {
    auto [x, pe] = st.back();
    st.pop_back();
    for (int f : inc[x]) {
      if (f == pe) continue;
      int y = n.other(f, x);
      id[y] = r.add_node(n.labels[y]);
      r.add_edge(id[x], id[y]);
      st.push_back({y, f});
    }
  }
  return r;
}

bool all_identical_trees(const std::vector<Network>& s) {
  for (auto& n : s)
    if (reticulation_number(n) != 0) return false;
  auto c = canonical_unrooted(s[0]);
  for (auto& n : s)
    if (canonical_unrooted(n) != c) return false;
  return true;
}

void check_same_taxa(const std::vector<Network>& s) {
  if (s.empty()) throw Error("no structures");
  auto x = s[0].taxa();
  for (auto& n : s)
    if (n.taxa() != x) throw Error("taxon sets differ");
}

int find_edge(const Network& n, const std::vector<std::vector<int>>& inc, int a, int b, int avoid = -1) {
  for (int e : inc[a])
    if (e != avoid && n.other(e, a) == b) return e;
  return -1;
}

// labelled node adjacent to exactly the given parent?
std::vector<int> parents_of(const Network& n, const std::vector<std::vector<int>>& inc) {
  std::vector<int> par(n.num_nodes(), -1);
  for (int v = 0; v < n.num_nodes(); ++v)
    if (!n.labels[v].empty() && inc[v].size() == 1) par[v] = n.other(inc[v][0], v);
  return par;
}

// Deletes edges and cleans up. Returns false if taxa end up disconnected.
bool delete_and_tidy(Network& n, const std::vector<int>& es) {
  Network m = n.without_edges(es);
  if (!drop_taxon_free_components(m)) return false;
  n = tidy(m);
  return true;
}

// removes one taxon-free component hanging off a cut edge
bool prune_once(Network& n) {
  auto inc = n.incidence();
  auto br = bridges(n);
  for (int e = 0; e < n.num_edges(); ++e) {
    if (!br[e]) continue;
    for (int side : {n.edges[e].u, n.edges[e].v}) {
      auto in = reach_without(n, inc, side, e);
      bool any = false;
      for (int v = 0; v < n.num_nodes(); ++v) any |= in[v] && !n.labels[v].empty();
      if (any) continue;
      std::vector<char> de(n.num_edges(), 0);
      de[e] = 1;
      n = tidy(n.without(in, de));
      return true;
    }
  }
  return false;
}

int total_size(const std::vector<Network>& s) {
  int z = 0;
  for (auto& n : s) z += n.num_nodes() + n.num_edges() + int(n.taxa().size());
  return z;
}

}  // namespace

std::string Step::str() const {
  std::ostringstream o;
  switch (kind) {
    case Kind::Prune: o << "PRUNE " << what; break;
    case Kind::CPS:
      o << "CPS " << join(taxa) << " -> " << fresh << " shape "
        << (shape.rooted ? canonical_rooted(shape) : canonical_unrooted(shape));
      break;
    case Kind::CC: o << "CC " << join(taxa) << " keep " << keep; break;
    case Kind::NC: o << "NC case " << nc_case << " chain " << join(taxa) << " delete " << what; break;
    case Kind::Decide: o << "DECIDE " << what; break;
  }
  return o.str();
}

std::string ReductionLog::str() const {
  std::string s;
  for (auto& st : steps) s += st.str() + "\n";
  return s;
}

std::vector<TaxonSet> pendant_taxon_sets(const Network& n) {
  std::vector<TaxonSet> out;
  for (auto& s : pendant_sides(n)) out.push_back(s.taxa);
  return out;
}

bool has_pendant(const Network& n, const TaxonSet& y) {
  for (auto& s : pendant_sides(n))
    if (s.taxa == y) return true;
  return false;
}

std::optional<PendantSubtree> find_common_pendant_subtree(const std::vector<Network>& s) {
  check_same_taxa(s);
  if (s.size() < 2) throw Error("need at least two structures");
  if (s[0].taxa().size() >= 2 && all_identical_trees(s)) {
    PendantSubtree p;
    p.taxa = s[0].taxa();
    p.attachment.assign(s.size(), -1);
    p.inner.assign(s.size(), -1);
    p.shape = s[0];
    p.whole = true;
    return p;
  }
  std::vector<std::map<TaxonSet, Side>> per(s.size());
  for (size_t i = 0; i < s.size(); ++i)
    for (auto& side : pendant_sides(s[i])) per[i].emplace(side.taxa, side);
  std::vector<TaxonSet> common;
  for (auto& [tx, side] : per[0]) {
    bool ok = true;
    for (size_t i = 1; i < s.size() && ok; ++i) {
      auto it = per[i].find(tx);
      ok = it != per[i].end() && it->second.shape == side.shape;
    }
    if (ok) common.push_back(tx);
  }
  std::optional<std::vector<Taxon>> best;
  for (auto& a : common) {
    bool maximal = true;
    for (auto& b : common)
      if (b.size() > a.size() && std::includes(b.begin(), b.end(), a.begin(), a.end())) maximal = false;
    if (!maximal) continue;
    std::vector<Taxon> v(a.begin(), a.end());
    if (!best || before(v, *best)) best = v;
  }
  if (!best) return std::nullopt;
  PendantSubtree p;
  p.taxa = TaxonSet(best->begin(), best->end());
  for (size_t i = 0; i < s.size(); ++i) {
    auto& side = per[i].at(p.taxa);
    p.attachment.push_back(side.edge);
    p.inner.push_back(side.start);
  }
  p.shape = side_tree(s[0], p.attachment[0], p.inner[0]);
  return p;
}

std::vector<Network> apply_cps(const std::vector<Network>& s, const PendantSubtree& p, const Taxon& fresh,
                               ReductionLog* log) {
  std::vector<Network> out;
  for (size_t i = 0; i < s.size(); ++i) {
    const Network& n = s[i];
    if (p.whole) {
      Network one;
      one.rooted = n.rooted;
      one.add_node(fresh);
      out.push_back(one);
      continue;
    }
    int e = p.attachment[i], v = p.inner[i];
    int u = n.other(e, v);
    auto in = reach_without(n, n.incidence(), v, e);
    std::vector<int> nm;
    Network m = n.without(in, {}, &nm);
    m.add_edge(nm[u], m.add_node(fresh));
    out.push_back(m);
  }
  if (log) {
    Step st{Step::Kind::CPS};
    st.taxa.assign(p.taxa.begin(), p.taxa.end());
    st.fresh = fresh;
    st.shape = p.shape;
    log->steps.push_back(st);
  }
  return out;
}

std::vector<Chain> chains_of(const Network& n) {
  std::vector<Chain> out;
  if (n.rooted) throw Error("chains are defined on unrooted structures");
  if (n.num_nodes() < 3) return out;
  auto inc = n.incidence();
  auto par = parents_of(n, inc);
  std::vector<std::vector<int>> leaves_at(n.num_nodes());
  for (int v = 0; v < n.num_nodes(); ++v)
    if (par[v] >= 0 && n.labels[par[v]].empty()) leaves_at[par[v]].push_back(v);
  for (auto& l : leaves_at)
    std::sort(l.begin(), l.end(), [&](int a, int b) { return n.labels[a] < n.labels[b]; });

  std::map<std::vector<Taxon>, std::vector<int>> found;
  std::vector<int> seq, ps;
  auto record = [&] {
    std::vector<Taxon> tx;
    for (int x : seq) tx.push_back(n.labels[x]);
    std::vector<int> pp = ps;
    if (tx.back() < tx.front()) std::reverse(tx.begin(), tx.end()), std::reverse(pp.begin(), pp.end());
    found.emplace(tx, pp);
  };
  auto in_seq = [&](int x) { return std::find(seq.begin(), seq.end(), x) != seq.end(); };
  auto in_ps = [&](int p) { return std::find(ps.begin(), ps.end(), p) != ps.end(); };

  std::function<void()> grow = [&] {
    size_t t = seq.size();
    if (t >= 2) record();
    int last = ps.back();
    bool end_equal = t >= 2 && ps[t - 1] == ps[t - 2];
    if (end_equal && t > 2) return;
    // a sibling leaf under the same parent closes the chain (or starts it)
    if (!end_equal)
      for (int y : leaves_at[last])
        if (!in_seq(y)) {
          seq.push_back(y), ps.push_back(last);
          grow();
          seq.pop_back(), ps.pop_back();
        }
    for (int e : inc[last]) {
      int w = n.other(e, last);
      if (!n.labels[w].empty() || in_ps(w)) continue;
      for (int z : leaves_at[w]) {
        seq.push_back(z), ps.push_back(w);
        grow();
        seq.pop_back(), ps.pop_back();
      }
    }
  };
  for (int x = 0; x < n.num_nodes(); ++x) {
    if (par[x] < 0 || !n.labels[par[x]].empty()) continue;
    seq = {x};
    ps = {par[x]};
    grow();
  }
  for (auto& [tx, pp] : found) out.push_back({tx, {pp}});
  return out;
}

bool has_chain(const Network& n, std::vector<Taxon> seq) {
  if (seq.back() < seq.front()) std::reverse(seq.begin(), seq.end());
  for (auto& c : chains_of(n))
    if (c.taxa == seq) return true;
  return false;
}

std::vector<Chain> maximal_common_chains(const std::vector<Network>& s, int min_len) {
  check_same_taxa(s);
  std::map<std::vector<Taxon>, Chain> common;
  for (auto& c : chains_of(s[0])) common[c.taxa] = c;
  for (size_t i = 1; i < s.size(); ++i) {
    std::map<std::vector<Taxon>, std::vector<int>> mine;
    for (auto& c : chains_of(s[i])) mine[c.taxa] = c.parents[0];
    for (auto it = common.begin(); it != common.end();) {
      auto f = mine.find(it->first);
      if (f == mine.end()) {
        it = common.erase(it);
      } else {
        it->second.parents.push_back(f->second);
        ++it;
      }
    }
  }
  std::set<std::vector<Taxon>> covered;
  auto canon = [](std::vector<Taxon> v) {
    if (v.back() < v.front()) std::reverse(v.begin(), v.end());
    return v;
  };
  for (auto& [tx, c] : common) {
    if (tx.size() < 3) continue;
    covered.insert(canon(std::vector<Taxon>(tx.begin() + 1, tx.end())));
    covered.insert(canon(std::vector<Taxon>(tx.begin(), tx.end() - 1)));
  }
  std::vector<Chain> out;
  for (auto& [tx, c] : common)
    if (int(tx.size()) >= min_len && !covered.count(tx)) out.push_back(c);
  std::sort(out.begin(), out.end(), [](const Chain& a, const Chain& b) { return before(a.taxa, b.taxa); });
  return out;
}

std::optional<Chain> find_common_chain(const std::vector<Network>& s, int min_len) {
  auto all = maximal_common_chains(s, min_len);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<Network> truncate_chain(const std::vector<Network>& s, const Chain& c, int d, ReductionLog* log) {
  TaxonSet drop(c.taxa.begin() + std::min<size_t>(d, c.taxa.size()), c.taxa.end());
  std::vector<Network> out;
  for (auto& n : s) out.push_back(delete_taxa(n, drop));
  if (log) {
    Step st{Step::Kind::CC};
    st.taxa = c.taxa;
    st.keep = d;
    log->steps.push_back(st);
  }
  return out;
}

std::optional<std::vector<Network>> apply_dcc(const std::vector<Network>& s, int d, ReductionLog* log) {
  if (d < 1) throw Error("chain length must be positive");
  auto c = find_common_chain(s, d + 1);
  if (!c) return std::nullopt;
  return truncate_chain(s, *c, d, log);
}

std::pair<Network, Network> trivial_instance(bool yes) {
  auto q = [](const char* a, const char* b, const char* c, const char* d) {
    std::string p = std::string(kReservedPrefix) + "q";
    return caterpillar({p + a, p + b, p + c, p + d});
  };
  return {q("1", "2", "3", "4"), yes ? q("1", "2", "3", "4") : q("1", "3", "2", "4")};
}

NcOutcome apply_nc(const Network& n, const Network& t, ReductionLog* log) {
  NcOutcome res;
  auto all = chains_of(n);
  std::set<std::vector<Taxon>> covered;
  auto canon = [](std::vector<Taxon> v) {
    if (v.back() < v.front()) std::reverse(v.begin(), v.end());
    return v;
  };
  for (auto& c : all) {
    if (c.taxa.size() < 3) continue;
    covered.insert(canon(std::vector<Taxon>(c.taxa.begin() + 1, c.taxa.end())));
    covered.insert(canon(std::vector<Taxon>(c.taxa.begin(), c.taxa.end() - 1)));
  }
  const Chain* pick = nullptr;
  for (auto& c : all)
    if (c.taxa.size() >= 3 && !covered.count(c.taxa) && (!pick || before(c.taxa, pick->taxa))) pick = &c;
  if (!pick) return res;

  const auto& x = pick->taxa;
  const auto& p = pick->parents[0];
  int len = int(x.size());
  auto inc = n.incidence();
  auto leaf = n.leaf_of();
  for (int i = 0; i + 1 < len; ++i)
    if (p[i] == p[i + 1]) return res;  // cherry: a pendant subtree, handled by the driver
  auto e_between = [&](int i) { return find_edge(n, inc, p[i], p[i + 1]); };
  auto e_outer = [&](int i, int nb) {
    for (int e : inc[p[i]])
      if (e != e_between(std::min(i, nb)) && n.other(e, p[i]) != leaf.at(x[i])) return e;
    return -1;
  };
  int e1 = e_outer(0, 1), et = e_outer(len - 1, len - 2);

  Step st{Step::Kind::NC};
  st.taxa = x;
  Network nn = n, tt = t;
  auto del = [&](int cs, int e, const std::string& name) {
    st.nc_case = cs;
    st.what = name;
    if (!delete_and_tidy(nn, {e})) res.kind = NcOutcome::Kind::No;
    else res.kind = NcOutcome::Kind::Applied;
  };
  auto tree_chain = [&](int a, int b, int c) { return has_chain(t, {x[a], x[b], x[c]}); };
  auto tree_pendant = [&](std::initializer_list<int> idx) {
    TaxonSet y;
    for (int i : idx) y.insert(x[i]);
    return has_pendant(t, y);
  };

  if (len >= 7) {
    st.nc_case = 1;
    st.what = "instance (trivial NO)";
    res.kind = NcOutcome::Kind::No;
  } else if (len == 6) {
    del(2, e_between(2), "e34");
  } else if (len == 5) {
    if (tree_chain(0, 1, 2)) del(3, e_between(2), "e34");
    else del(3, e_between(1), "e23");
  } else if (len == 4) {
    if (tree_chain(0, 1, 2)) del(4, e_between(2), "e34");
    else if (tree_chain(1, 2, 3)) del(4, e_between(0), "e12");
    else del(4, e_between(1), "e23");
  } else if (tree_pendant({0, 1, 2})) {
    auto tinc = t.incidence();
    auto tl = t.leaf_of();
    int a = t.other(tinc[tl.at(x[0])][0], tl.at(x[0])), b = t.other(tinc[tl.at(x[1])][0], tl.at(x[1]));
    if (a == b) del(5, e1, "e1");
    else del(5, et, "e3");
  } else if (tree_pendant({0, 1})) {
    del(6, e_between(1), "e23");
  } else if (tree_pendant({1, 2})) {
    del(7, e_between(0), "e12");
  } else if (tree_chain(0, 1, 2)) {
    st.nc_case = 8;
    st.what = x[2];
    nn = delete_taxa(nn, {x[2]});
    tt = delete_taxa(tt, {x[2]});
    res.kind = NcOutcome::Kind::Applied;
  } else {
    // the chain is neither a tree chain nor split into two pendant chains
    st.nc_case = 0;
    st.what = "instance (no case applies)";
    res.kind = NcOutcome::Kind::No;
  }
  res.n = nn;
  res.t = tt;
  res.nc_case = st.nc_case;
  if (log && res.kind == NcOutcome::Kind::Applied) log->steps.push_back(st);
  return res;
}

UtcKernel kernelize_utc(const Network& n0, const Network& t0) {
  validate_unrooted(n0);
  validate_unrooted(t0, true);
  if (n0.taxa() != t0.taxa()) throw Error("network and tree have different taxa");
  UtcKernel k;
  Network n = n0, t = t0;
  FreshNames fresh;
  auto decide = [&](bool yes, const std::string& why) {
    Step st{Step::Kind::Decide};
    st.what = std::string(yes ? "YES" : "NO") + " (" + why + ")";
    k.log.steps.push_back(st);
    std::tie(k.n, k.t) = trivial_instance(yes);
    k.decided = yes;
    return k;
  };
  while (true) {
    if (n.taxa().size() <= 3) return decide(true, "at most 3 taxa");
    if (prune_once(n)) {
      Step st{Step::Kind::Prune};
      st.what = "taxon-free component";
      k.log.steps.push_back(st);
      continue;
    }
    if (reticulation_number(n) == 0) {
      bool same = canonical_unrooted(n) == canonical_unrooted(t);
      return decide(same, same ? "network is the tree" : "network is a different tree");
    }
    if (auto p = find_common_pendant_subtree({n, t})) {
      auto r = apply_cps({n, t}, *p, fresh(), &k.log);
      n = r[0], t = r[1];
      continue;
    }
    if (!pendant_sides(n).empty()) return decide(false, "network pendant subtree not in the tree");
    if (auto r = apply_dcc({n, t}, 3, &k.log)) {
      n = (*r)[0], t = (*r)[1];
      continue;
    }
    auto nc = apply_nc(n, t, &k.log);
    if (nc.kind == NcOutcome::Kind::No)
      return decide(false, nc.nc_case ? "network chain rule case " + std::to_string(nc.nc_case)
                                      : "chain of length 3 fits no network chain case");
    if (nc.kind == NcOutcome::Kind::Applied) {
      n = nc.n, t = nc.t;
      continue;
    }
    break;
  }
  k.n = n;
  k.t = t;
  return k;
}

RuhnKernel kernelize_ruhn(const std::vector<Network>& s, int k) {
  check_same_taxa(s);
  for (auto& t : s) validate_unrooted(t, true);
  RuhnKernel res;
  res.trees = s;
  auto decide = [&](bool yes, const std::string& why) {
    Step st{Step::Kind::Decide};
    st.what = std::string(yes ? "YES" : "NO") + " (" + why + ")";
    res.log.steps.push_back(st);
    res.decided = yes;
  };
  if (s.size() == 1 || all_identical_trees(s)) {
    decide(true, "all trees identical");
    return res;
  }
  if (k == 0) {
    decide(false, "trees differ");
    return res;
  }
  FreshNames fresh;
  while (true) {
    int before_size = total_size(res.trees);
    if (auto p = find_common_pendant_subtree(res.trees)) {
      res.trees = apply_cps(res.trees, *p, fresh(), &res.log);
    } else if (auto r = apply_dcc(res.trees, 5 * k, &res.log)) {
      res.trees = *r;
    } else {
      break;
    }
    if (total_size(res.trees) >= before_size) throw Error("reduction did not shrink the instance");
  }
  if (res.trees[0].taxa().size() == 1) {
    decide(true, "all trees identical");
  } else if (int(res.trees[0].taxa().size()) >= 20 * k * k) {
    decide(false, "kernel has at least 20k^2 taxa");
  }
  return res;
}

Network expand_cps(const Network& host, const Step& step) {
  if (step.kind != Step::Kind::CPS) throw Error("not a CPS step");
  auto lf = host.leaf_of();
  auto it = lf.find(step.fresh);
  if (it == lf.end()) throw Error("taxon " + step.fresh + " not in host");
  int x = it->second;
  Network out = host;
  const Network& sh = step.shape;
  if (!sh.rooted) {
    // whole tree replaced a single-taxon structure
    if (host.num_nodes() != 1) throw Error("whole-tree expansion needs a single-taxon host");
    Network t = sh;
    t.rooted = host.rooted;
    return t;
  }
  std::vector<int> id(sh.num_nodes());
  for (int v = 0; v < sh.num_nodes(); ++v) id[v] = out.add_node(sh.labels[v]);
  for (auto& e : sh.edges) out.add_edge(id[e.u], id[e.v]);
  int r = sh.root();
  // redirect the edge(s) into x onto the subtree root, then drop x
  for (auto& e : out.edges) {
    if (e.v == x) e.v = id[r];
    else if (e.u == x) e.u = id[r];
  }
  std::vector<char> drop(out.num_nodes(), 0);
  drop[x] = 1;
  return out.without(drop, {});
}

std::vector<Network> replay_forward(const std::vector<Network>& s, const ReductionLog& log) {
  std::vector<Network> cur = s;
  for (auto& st : log.steps) {
    switch (st.kind) {
      case Step::Kind::CPS: {
        TaxonSet tx(st.taxa.begin(), st.taxa.end());
        PendantSubtree p;
        p.taxa = tx;
        if (tx == cur[0].taxa()) {
          p.whole = true;
        } else {
          for (auto& n : cur) {
            bool ok = false;
            for (auto& side : pendant_sides(n))
              if (side.taxa == tx) {
                p.attachment.push_back(side.edge);
                p.inner.push_back(side.start);
                ok = true;
                break;
              }
            if (!ok) throw Error("replay: subtree " + join(st.taxa) + " is not pendant");
          }
        }
        cur = apply_cps(cur, p, st.fresh);
        break;
      }
      case Step::Kind::CC: {
        TaxonSet drop(st.taxa.begin() + st.keep, st.taxa.end());
        for (auto& n : cur) n = delete_taxa(n, drop);
        break;
      }
      case Step::Kind::NC: {
        if (cur.size() != 2) throw Error("replay: NC needs a network and a tree");
        if (st.nc_case == 8) {
          for (auto& n : cur) n = delete_taxa(n, {st.what});
          break;
        }
        Network& n = cur[0];
        auto inc = n.incidence();
        auto leaf = n.leaf_of();
        auto par = [&](int i) { return n.other(inc[leaf.at(st.taxa[i])][0], leaf.at(st.taxa[i])); };
        int len = int(st.taxa.size()), e = -1;
        if (st.what == "e1" || st.what == "e3") {
          int i = st.what == "e1" ? 0 : len - 1, nb = st.what == "e1" ? 1 : len - 2;
          int between = find_edge(n, inc, par(std::min(i, nb)), par(std::max(i, nb)));
          for (int f : inc[par(i)])
            if (f != between && n.other(f, par(i)) != leaf.at(st.taxa[i])) e = f;
        } else {
          int i = st.what[1] - '1';
          e = find_edge(n, inc, par(i), par(i + 1));
        }
        if (e < 0 || !delete_and_tidy(n, {e})) throw Error("replay: NC step failed");
        break;
      }
      case Step::Kind::Prune:
        if (!prune_once(cur[0])) throw Error("replay: nothing to prune");
        break;
      case Step::Kind::Decide:
        break;
    }
  }
  return cur;
}

}  // namespace phylonet
