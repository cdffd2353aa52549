#pragma once

#include <map>
#include <utility>
#include <vector>

#include "krq/character.hpp"
#include "krq/rootdata.hpp"

namespace krq {

// (node, width) -> number of KR factors W_width^(node). Nodes are 1-based.
using NuSpec = std::map<std::pair<int, int>, int>;

// cfg[a][i] = m^(a)_i for node index a (0-based) and width i >= 1 (slot 0 unused).
using MConfig = std::vector<std::vector<int>>;

long vacancy(const RootDatum& d, const NuSpec& nu, const MConfig& cfg, int node, int i);

// M(W, lambda): admissible configurations with every vacancy number nonnegative.
BigInt fermionic_multiplicity(const RootDatum& d, const NuSpec& nu, const Weight& lam);

// Decomposition of the single KR module W_m^(node).
DecompositionTable kr_decomposition(const RootDatum& d, int node, int m);

// All partitions of n, each as a multiplicity vector indexed by part size.
const std::vector<std::vector<int>>& partitions(int n);

}  // namespace krq
