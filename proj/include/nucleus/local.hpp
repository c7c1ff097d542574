#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nucleus/cliques.hpp"
#include "nucleus/graph.hpp"

namespace nucleus {

// Order in which the asynchronous engine sweeps the r-cliques.
enum class OrderKind { natural, random, degree_levels };

std::string_view to_string(OrderKind order);
OrderKind parse_order(std::string_view name);

struct IterationStats {
  std::size_t iteration = 0;       // 1-based pass number
  std::size_t recomputations = 0;  // tau evaluations in this pass
  std::size_t updates = 0;         // evaluations that lowered tau
  double active_ratio = 0.0;       // recomputations / |R|
  double seconds = 0.0;
};

// Called after every pass with that pass's statistics and the tau values it
// left behind. Runs on the calling thread between passes.
using IterationObserver = std::function<void(const IterationStats&, std::span<const std::uint32_t> tau)>;

struct EngineOptions {
  int threads = 1;
  std::size_t max_iterations = 0;  // 0: run to convergence
  // Stop after a pass that recomputed fewer than this fraction of the cliques.
  std::optional<double> stop_active_ratio;
  OrderKind order = OrderKind::natural;
  std::uint64_t seed = 0;
  bool notify = true;
  IterationObserver observer;
};

struct EngineInfo {
  std::string name;
  OrderKind order = OrderKind::natural;
  std::uint64_t seed = 0;
  int threads = 1;
  bool notify = false;
  std::optional<double> stop_active_ratio;
  std::size_t max_iterations = 0;
};

struct DecompositionResult {
  std::vector<std::uint32_t> kappa;
  // Passes over the cliques, including a final pass that only confirms
  // nothing changes. Always >= 1 and equal to stats.size().
  std::size_t iterations = 0;
  // Passes in which at least one tau dropped.
  std::size_t updating_iterations = 0;
  // False when stopped by max_iterations or the active-ratio threshold; kappa
  // then holds upper bounds rather than exact values.
  bool converged = false;
  std::vector<IterationStats> stats;
  EngineInfo engine;
  double seconds = 0.0;

  std::size_t recomputations() const;
};

/// Synchronous iterated h-index: every pass reads only the previous pass's
/// tau snapshot, so the trajectory is independent of order and thread count.
DecompositionResult run_snd(const Graph& g, const CliqueSet& cs, const EngineOptions& options = {});

/// Asynchronous iterated h-index: reads the latest tau values in place.
///
/// With options.notify a clique is recomputed only when a neighbor dropped to
/// a value at or below its own tau since it was last evaluated. Notifications
/// that reach a clique before its turn in the current pass are consumed by
/// that evaluation; later ones carry over to the next pass.
///
/// tau cells and flags are shared between workers through relaxed single-cell
/// atomics. Stale reads only see larger values, which keeps every evaluation
/// an upper bound of kappa, so the converged result matches the sequential one.
DecompositionResult run_and(const Graph& g, const CliqueSet& cs, const EngineOptions& options = {});

// The sweep order run_and uses for the given options.
std::vector<CliqueId> processing_order(const Graph& g, const CliqueSet& cs, OrderKind order, std::uint64_t seed);

struct PartialResult {
  std::vector<CliqueId> targets;  // sorted, deduplicated
  std::vector<std::uint32_t> tau;  // parallel to targets
  std::size_t iterations = 0;
  std::size_t recomputations = 0;
  bool converged = false;

  std::uint32_t tau_of(CliqueId id) const;
};

// Asynchronous engine with notifications restricted to `targets`; every other
// clique keeps tau = s-degree. Sequential. Throws ConfigError for an empty
// target set and std::out_of_range for invalid ids.
PartialResult partial_and(const Graph& g, const CliqueSet& cs, std::span<const CliqueId> targets,
                          const EngineOptions& options = {});

// anchor together with every r-clique sharing an s-clique with it.
std::vector<CliqueId> ego_targets(const Graph& g, const CliqueSet& cs, CliqueId anchor);

// partial_and over the anchor's ego network; an upper bound of kappa(anchor).
std::uint32_t estimate_kappa(const Graph& g, const CliqueSet& cs, CliqueId anchor);
std::uint32_t estimate_vertex_core(const Graph& g, const CliqueSet& cs, VertexId v);
std::uint32_t estimate_edge_truss(const Graph& g, const CliqueSet& cs, CliqueId edge);

}  // namespace nucleus
