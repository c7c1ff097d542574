#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "nucleus/cliques.hpp"
#include "nucleus/graph.hpp"
#include "nucleus/local.hpp"

namespace nucleus {

/// Recursive minimum-degree partition of the r-cliques. levels[0] holds every
/// clique of minimum s-degree; removing them (and every s-clique touching
/// them) and repeating yields levels[1], and so on. The level count bounds the
/// number of passes the synchronous engine needs.
struct DegreeLevels {
  std::vector<std::vector<CliqueId>> levels;  // ids ascending within a level
  std::vector<std::uint32_t> level_of;

  std::size_t count() const { return levels.size(); }
};

DegreeLevels degree_levels(const Graph& g, const CliqueSet& cs);

// Tie-corrected Kendall rank correlation (tau-b), O(n log n). When neither
// sequence has any untied pair the score is 1 if both are constant and 0
// otherwise. Throws std::invalid_argument for length mismatch or n < 2.
double kendall_tau(std::span<const std::uint32_t> estimates, std::span<const std::uint32_t> exact);

// Fraction of positions where the two sequences agree.
double accuracy(std::span<const std::uint32_t> estimates, std::span<const std::uint32_t> exact);

constexpr std::size_t kBruteForceLimit = 20;

// kappa by exhaustive search over r-clique subsets: for each subset the
// surviving s-cliques are those whose r-cliques all lie in it, and every
// member's kappa is at least the subset's minimum surviving s-degree.
// Throws std::length_error above kBruteForceLimit cliques.
std::vector<std::uint32_t> brute_force_kappa(const Graph& g, const CliqueSet& cs);

// The connected region around `anchor` reachable through s-cliques whose
// r-cliques all have kappa >= kappa(anchor): the max-core / max-truss of the
// anchor. Sorted ids. Throws std::out_of_range for an invalid anchor.
std::vector<CliqueId> max_subgraph(const Graph& g, const CliqueSet& cs, std::span<const std::uint32_t> kappa,
                                   CliqueId anchor);

struct TraceRow {
  std::size_t iteration = 0;
  double kendall_tau = 0.0;
  double active_ratio = 0.0;
  double accuracy = 0.0;
};

/// Per-pass comparison of an engine's tau against exact kappa.
class ConvergenceTrace {
 public:
  explicit ConvergenceTrace(std::vector<std::uint32_t> exact) : exact_(std::move(exact)) {}

  // An observer that appends one row per pass.
  IterationObserver observer();
  void record(const IterationStats& stats, std::span<const std::uint32_t> tau);

  const std::vector<TraceRow>& rows() const { return rows_; }
  void write_csv(std::ostream& out) const;

 private:
  std::vector<std::uint32_t> exact_;
  std::vector<TraceRow> rows_;
};

}  // namespace nucleus
