#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "phylonet/gadgets.hpp"
#include "phylonet/guards.hpp"
#include "phylonet/hn.hpp"
#include "phylonet/newick.hpp"
#include "phylonet/ruhn.hpp"
#include "phylonet/uhn.hpp"
#include "phylonet/utc.hpp"

namespace py = pybind11;
using namespace phylonet;

namespace {

std::vector<Network> trees_of(const std::string& text, Mode mode) {
  std::vector<Network> out;
  for (auto& r : parse_trees(text, mode)) out.push_back(r.net);
  return out;
}

Network first_tree(const std::string& text) {
  auto t = trees_of(text, Mode::Unrooted);
  if (t.empty()) throw Error("no tree");
  return t[0];
}

}  // namespace

PYBIND11_MODULE(_phylonet, m) {
  m.doc() = "Tree containment and hybridization number solvers (text in, text out)";
  static py::exception<GuardExceeded> guard_exc(m, "GuardExceeded", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const GuardExceeded& e) {
      guard_exc(e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("set_threads", &set_threads, py::arg("n"));

  m.def(
      "utc",
      [](const std::string& network, const std::string& tree, bool kernel) {
        return utc_solve(parse_network(network, Mode::Unrooted), first_tree(tree), kernel);
      },
      py::arg("network"), py::arg("tree"), py::arg("kernel") = false,
      "Does the unrooted network (edge-list text) display the tree (Newick)?");

  m.def(
      "utc_certificate",
      [](const std::string& network, const std::string& tree) -> std::optional<std::vector<int>> {
        auto n = parse_network(network, Mode::Unrooted);
        auto t = first_tree(tree);
        auto img = utc_certificate(n, t);
        if (!img || !image_matches(n, *img, t)) return std::nullopt;
        return img->edges;
      },
      py::arg("network"), py::arg("tree"), "Edge ids of an image of the tree, or None.");

  m.def(
      "uhn",
      [](const std::string& trees) {
        auto t = trees_of(trees, Mode::Unrooted);
        if (t.size() != 2) throw Error("expected two trees");
        auto s = uhn_solve(t[0], t[1]);
        std::vector<std::vector<std::string>> blocks;
        for (auto& b : s.forest.blocks) blocks.emplace_back(b.begin(), b.end());
        return py::make_tuple(s.value, blocks, write_network(s.network.net));
      },
      py::arg("trees"), "(h_u, agreement forest blocks, network text) for two unrooted trees.");

  m.def(
      "hn",
      [](const std::string& trees, int k_max) -> py::object {
        auto s = hn_exact(trees_of(trees, Mode::Rooted), k_max);
        if (!s) return py::none();
        return py::make_tuple(s->value, write_network(s->network));
      },
      py::arg("trees"), py::arg("k_max") = 3, "(h_r, eNewick network) or None above k_max.");

  m.def(
      "ruhn",
      [](const std::string& trees, int k_max) -> py::object {
        auto t = trees_of(trees, Mode::Unrooted);
        auto s = ruhn_exact(t, k_max);
        if (!s) return py::none();
        std::vector<std::string> roots;
        for (size_t i = 0; i < t.size(); ++i) roots.push_back(describe_split(t[i], s->rootings[i]));
        return py::make_tuple(s->value, roots, write_network(s->network));
      },
      py::arg("trees"), py::arg("k_max") = 3, "(h_ru, root splits, eNewick network) or None above k_max.");

  m.def(
      "tbr_distance",
      [](const std::string& trees) {
        auto t = trees_of(trees, Mode::Unrooted);
        if (t.size() != 2) throw Error("expected two trees");
        return tbr_bfs_oracle(t[0], t[1]);
      },
      py::arg("trees"));

  m.def(
      "ndp_to_utc",
      [](const std::string& ndp) {
        auto u = ndp_to_utc(parse_ndp(ndp));
        return py::make_tuple(write_network(u.n), write_tree(u.t));
      },
      py::arg("ndp"), "(network text, tree Newick) for a disjoint paths instance.");

  m.def(
      "hn_to_ruhn",
      [](const std::string& t1, const std::string& t2, bool long_caterpillars) {
        auto [u1, u2] = hn_to_ruhn(parse_tree(t1, Mode::Rooted), parse_tree(t2, Mode::Rooted), long_caterpillars);
        return py::make_tuple(write_tree(u1), write_tree(u2));
      },
      py::arg("t1"), py::arg("t2"), py::arg("long_caterpillars") = false);
}
