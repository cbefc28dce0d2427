#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phylonet/core.hpp"

namespace phylonet {

struct ParseError : Error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

struct Record {
  std::string name;  // optional `name =` prefix, else empty
  Network net;
};

// Newick trees. Unrooted mode needs a top-level trifurcation (or `(a,b);`),
// rooted mode a top-level bifurcation.
Network parse_tree(const std::string& text, Mode mode);
std::vector<Record> parse_trees(const std::string& text, Mode mode);
std::string write_tree(const Network& t);

// Rooted: extended Newick with #Hk tags. Unrooted: edge-list format
//   unrooted-network
//   nodeA nodeB
//   leaf node taxon
Network parse_network(const std::string& text, Mode mode);
std::vector<Record> parse_networks(const std::string& text, Mode mode);
std::string write_network(const Network& n);

std::string export_dot(const Network& n, const std::optional<Image>& highlight = std::nullopt);

// reads a whole file, throws Error on failure
std::string read_file(const std::string& path);

}  // namespace phylonet
