#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "phylonet/core.hpp"
#include "phylonet/instances.hpp"
#include "phylonet/newick.hpp"

namespace testing_support {

using namespace phylonet;

inline std::string data_path(const std::string& name) { return std::string(PHYLONET_DATA_DIR) + "/" + name; }

}  // namespace testing_support
