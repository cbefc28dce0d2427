#include "phylonet/guards.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "phylonet/core.hpp"

namespace phylonet {

namespace {

void read_env(const char* name, int& field) {
  const char* v = std::getenv(name);
  if (!v || !*v) return;
  try {
    int x = std::stoi(v);
    if (x <= 0) throw Error(std::string(name) + " must be positive");
    field = x;
  } catch (const std::logic_error&) {
    throw Error(std::string("bad value for ") + name + ": " + v);
  }
}

std::atomic<int> g_threads{1};

}  // namespace

Guards Guards::from_env() {
  Guards g;
  read_env("PHYLONET_GUARD_ORACLE_EDGES", g.oracle_edges);
  read_env("PHYLONET_GUARD_MAF_TAXA", g.maf_taxa);
  read_env("PHYLONET_GUARD_TBR_TAXA", g.tbr_taxa);
  read_env("PHYLONET_GUARD_HN_TAXA", g.hn_taxa);
  read_env("PHYLONET_GUARD_HN_K", g.hn_k);
  read_env("PHYLONET_GUARD_UHN_ORACLE_TAXA", g.uhn_oracle_taxa);
  read_env("PHYLONET_GUARD_UHN_ORACLE_K", g.uhn_oracle_k);
  read_env("PHYLONET_GUARD_GENERATOR_R", g.generator_r);
  return g;
}

Guards& default_guards() {
  static Guards g = Guards::from_env();
  return g;
}

void set_threads(int n) { g_threads = n < 1 ? 1 : n; }
int threads() { return g_threads; }

void parallel_for(int n, const std::function<void(int)>& f) {
  int w = std::min(threads(), n);
  if (w <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < w; ++t)
    pool.emplace_back([&] {
      for (int i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace phylonet
