#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nucleus/cliques.hpp"
#include "nucleus/graph.hpp"

namespace nucleus {

struct PeelOptions {
  // Randomizes the order among equal-degree cliques; the result must not change.
  std::optional<std::uint64_t> shuffle_seed;
};

// Exact kappa_s for every r-clique by repeatedly removing a minimum-degree
// r-clique (bucket queue). Serial reference for the local engines.
std::vector<std::uint32_t> peel(const Graph& g, const CliqueSet& cs, const PeelOptions& options = {});

// Core numbers straight from the adjacency (Batagelj-Zaversnik), no CliqueSet.
std::vector<std::uint32_t> core_numbers(const Graph& g);

}  // namespace nucleus
