#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phylonet/core.hpp"

namespace phylonet {

struct PendantSubtree {
  TaxonSet taxa;
  std::vector<int> attachment;  // per structure: the detaching edge (-1 for a whole tree)
  std::vector<int> inner;       // per structure: endpoint of the attachment on the subtree side
  Network shape;                // rooted at the attachment point; unrooted when whole trees coincide
  bool whole = false;           // all structures are the same tree
};

struct Chain {
  std::vector<Taxon> taxa;                // canonical orientation: first taxon < last taxon
  std::vector<std::vector<int>> parents;  // per structure, aligned with taxa
};

struct Step {
  enum class Kind { Prune, CPS, CC, NC, Decide };
  explicit Step(Kind k = Kind::Decide) : kind(k) {}
  Kind kind;
  std::vector<Taxon> taxa;  // CPS: clipped taxa (sorted); CC/NC: chain in order
  Taxon fresh;              // CPS only
  Network shape;            // CPS only
  int keep = 0;             // CC: kept prefix length
  int nc_case = 0;          // NC: 1..8
  std::string what;         // NC: deleted element; Decide: YES/NO; Prune: count
  std::string str() const;
};

struct ReductionLog {
  std::vector<Step> steps;
  std::string str() const;  // one step per line
};

// Generates names with the reserved prefix; never collides with validated inputs.
struct FreshNames {
  int next = 1;
  Taxon operator()() { return std::string(kReservedPrefix) + "x" + std::to_string(next++); }
};

// Maximal common pendant subtree with at least two taxa; ties go to the smallest
// minimum taxon, then to the lexicographically smallest taxon list.
std::optional<PendantSubtree> find_common_pendant_subtree(const std::vector<Network>& s);
std::vector<Network> apply_cps(const std::vector<Network>& s, const PendantSubtree& p, const Taxon& fresh,
                               ReductionLog* log = nullptr);

// Every chain of length >= 2 in one structure, canonical orientation, with parents.
std::vector<Chain> chains_of(const Network& n);
bool has_chain(const Network& n, std::vector<Taxon> seq);
// Maximal common chain of length >= min_len, same tie-break as subtrees.
std::optional<Chain> find_common_chain(const std::vector<Network>& s, int min_len);
// all maximal common chains of length >= min_len, in tie-break order
std::vector<Chain> maximal_common_chains(const std::vector<Network>& s, int min_len);
std::vector<Network> truncate_chain(const std::vector<Network>& s, const Chain& c, int d, ReductionLog* log = nullptr);
// Truncate one maximal common chain longer than d to its first d taxa.
std::optional<std::vector<Network>> apply_dcc(const std::vector<Network>& s, int d, ReductionLog* log = nullptr);

// taxa of all pendant subtrees (>= 2 taxa, not all of X) of an unrooted structure
std::vector<TaxonSet> pendant_taxon_sets(const Network& n);
bool has_pendant(const Network& n, const TaxonSet& y);

struct NcOutcome {
  enum class Kind { Applied, No, NotApplicable } kind = Kind::NotApplicable;
  int nc_case = 0;  // 0 when t = 3 and no case applies (decided NO)
  Network n, t;
};
// One network-chain step on a maximal chain of N with t >= 3. Only applied
// steps are logged; a NO outcome is reported through the return value.
NcOutcome apply_nc(const Network& n, const Network& t, ReductionLog* log = nullptr);

// Trivial instances on reserved taxa: identical (YES) or distinct (NO) quartets.
std::pair<Network, Network> trivial_instance(bool yes);

struct UtcKernel {
  Network n, t;
  ReductionLog log;
  std::optional<bool> decided;
};
UtcKernel kernelize_utc(const Network& n, const Network& t);

struct RuhnKernel {
  std::vector<Network> trees;
  ReductionLog log;
  std::optional<bool> decided;  // set when the rules alone settle h^ru <= k
};
RuhnKernel kernelize_ruhn(const std::vector<Network>& s, int k);

// Re-derive a reduced instance from the original one by replaying CPS/CC/NC steps.
std::vector<Network> replay_forward(const std::vector<Network>& s, const ReductionLog& log);
// Replace the leaf labelled step.fresh by the clipped subtree (rooted or unrooted host).
Network expand_cps(const Network& host, const Step& step);

}  // namespace phylonet
