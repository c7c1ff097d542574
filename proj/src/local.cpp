#include "nucleus/local.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

#include <omp.h>

#include "nucleus/analysis.hpp"
#include "nucleus/hindex.hpp"

namespace nucleus {

std::string_view to_string(OrderKind order) {
  switch (order) {
    case OrderKind::natural: return "natural";
    case OrderKind::random: return "random";
    case OrderKind::degree_levels: return "levels";
  }
  return "?";
}

OrderKind parse_order(std::string_view name) {
  if (name == "natural") return OrderKind::natural;
  if (name == "random") return OrderKind::random;
  if (name == "levels") return OrderKind::degree_levels;
  throw ConfigError("unknown order '" + std::string(name) + "' (natural|random|levels)");
}

std::size_t DecompositionResult::recomputations() const {
  std::size_t total = 0;
  for (const auto& s : stats) total += s.recomputations;
  return total;
}

std::uint32_t PartialResult::tau_of(CliqueId id) const {
  auto it = std::lower_bound(targets.begin(), targets.end(), id);
  if (it == targets.end() || *it != id) throw std::out_of_range("clique is not a target");
  return tau[static_cast<std::size_t>(it - targets.begin())];
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr int kChunk = 100;

// One application of the update operator to `id`: rho(S) is the smallest tau
// among the other r-cliques of each containing s-clique, and the new value is
// the h-index of those minima. `current` bounds the result (tau never rises),
// which lets the scan stop once `current` minima reach `current`.
template <class ReadTau>
std::uint32_t evaluate(const Graph& g, const CliqueSet& cs, CliqueId id, std::uint32_t current, ReadTau&& read,
                       std::vector<std::uint32_t>& scratch) {
  HIndexAccumulator acc(current, scratch);
  if (acc.saturated()) return acc.finish();
  cs.for_each_s_clique(g, id, [&](VertexId, std::span<const CliqueId> others) {
    std::uint32_t rho = UINT32_MAX;
    for (CliqueId o : others) rho = std::min(rho, read(o));
    acc.add(rho);
    return !acc.saturated();
  });
  return acc.finish();
}

void validate(const EngineOptions& options) {
  if (options.threads < 1) throw ConfigError("threads must be >= 1");
  if (options.stop_active_ratio && (*options.stop_active_ratio < 0.0 || *options.stop_active_ratio > 1.0)) {
    throw ConfigError("stop active ratio must lie in [0, 1]");
  }
}

EngineInfo describe(std::string name, const EngineOptions& options) {
  return EngineInfo{std::move(name), options.order,          options.seed,          options.threads,
                    options.notify,  options.stop_active_ratio, options.max_iterations};
}

// Shared end-of-pass bookkeeping. Returns true when the engine should stop.
bool finish_pass(DecompositionResult& result, IterationStats stats, std::span<const std::uint32_t> tau,
                 const EngineOptions& options, bool settled) {
  if (stats.updates > 0) ++result.updating_iterations;
  result.stats.push_back(stats);
  result.iterations = result.stats.size();
  if (options.observer) options.observer(stats, tau);
  if (settled) {
    result.converged = true;
    return true;
  }
  if (options.max_iterations != 0 && result.iterations >= options.max_iterations) return true;
  if (options.stop_active_ratio && stats.active_ratio < *options.stop_active_ratio) return true;
  return false;
}

double ratio(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

std::vector<CliqueId> processing_order(const Graph& g, const CliqueSet& cs, OrderKind order, std::uint64_t seed) {
  std::vector<CliqueId> ids;
  switch (order) {
    case OrderKind::natural:
      ids.resize(cs.size());
      std::iota(ids.begin(), ids.end(), CliqueId{0});
      break;
    case OrderKind::random: {
      ids.resize(cs.size());
      std::iota(ids.begin(), ids.end(), CliqueId{0});
      std::mt19937_64 rng(seed);
      std::shuffle(ids.begin(), ids.end(), rng);
      break;
    }
    case OrderKind::degree_levels: {
      ids.reserve(cs.size());
      for (const auto& level : degree_levels(g, cs).levels) ids.insert(ids.end(), level.begin(), level.end());
      break;
    }
  }
  return ids;
}

DecompositionResult run_snd(const Graph& g, const CliqueSet& cs, const EngineOptions& options) {
  validate(options);
  const auto start = Clock::now();
  const std::size_t n = cs.size();
  DecompositionResult result;
  result.engine = describe("snd", options);
  result.engine.notify = false;

  std::vector<std::uint32_t> tau(cs.s_degrees().begin(), cs.s_degrees().end());
  std::vector<std::uint32_t> prev(n);

  while (true) {
    const auto pass_start = Clock::now();
    std::size_t updates = 0;
#pragma omp parallel num_threads(options.threads)
    {
      std::vector<std::uint32_t> scratch;
#pragma omp for schedule(static)
      for (std::size_t i = 0; i < n; ++i) prev[i] = tau[i];
      // implicit barrier: the snapshot is complete before anyone reads it
#pragma omp for schedule(dynamic, kChunk) reduction(+ : updates)
      for (std::size_t i = 0; i < n; ++i) {
        const auto id = static_cast<CliqueId>(i);
        const std::uint32_t h = evaluate(g, cs, id, prev[i], [&](CliqueId o) { return prev[o]; }, scratch);
        if (h != prev[i]) ++updates;
        tau[i] = h;
      }
    }
    IterationStats stats{result.stats.size() + 1, n, updates, ratio(n, n), seconds_since(pass_start)};
    if (finish_pass(result, stats, tau, options, updates == 0)) break;
  }

  result.kappa = std::move(tau);
  result.seconds = seconds_since(start);
  return result;
}

DecompositionResult run_and(const Graph& g, const CliqueSet& cs, const EngineOptions& options) {
  validate(options);
  const auto start = Clock::now();
  const std::size_t n = cs.size();
  DecompositionResult result;
  result.engine = describe(options.notify ? "and" : "and-nonotify", options);

  const std::vector<CliqueId> order = processing_order(g, cs, options.order, options.seed);
  std::vector<std::uint32_t> tau(cs.s_degrees().begin(), cs.s_degrees().end());
  std::vector<unsigned char> active(n, 1);
  std::vector<unsigned char> notified(n, 0);
  const bool notify = options.notify;

  while (true) {
    const auto pass_start = Clock::now();
    std::size_t recomputations = 0;
    std::size_t updates = 0;
#pragma omp parallel num_threads(options.threads)
    {
      std::vector<std::uint32_t> scratch;
      auto read = [&](CliqueId o) { return std::atomic_ref<std::uint32_t>(tau[o]).load(std::memory_order_relaxed); };
#pragma omp for schedule(dynamic, kChunk) reduction(+ : recomputations, updates)
      for (std::size_t i = 0; i < n; ++i) {
        const CliqueId id = order[i];
        if (notify) {
          if (!active[id]) continue;
          // Consume notifications that arrived before this evaluation; the
          // acquire pairs with the notifier's release so its tau is visible.
          std::atomic_ref<unsigned char>(notified[id]).exchange(0, std::memory_order_acq_rel);
        }
        ++recomputations;
        const std::uint32_t current = read(id);
        const std::uint32_t h = evaluate(g, cs, id, current, read, scratch);
        if (h == current) continue;
        ++updates;
        std::atomic_ref<std::uint32_t>(tau[id]).store(h, std::memory_order_relaxed);
        if (!notify) continue;
        cs.for_each_s_clique(g, id, [&](VertexId, std::span<const CliqueId> others) {
          for (CliqueId o : others) {
            if (h <= read(o)) std::atomic_ref<unsigned char>(notified[o]).store(1, std::memory_order_release);
          }
        });
      }
    }

    bool settled = updates == 0;
    if (notify) {
      std::size_t pending = 0;
      for (std::size_t i = 0; i < n; ++i) pending += notified[i];
      settled = pending == 0;
      active.swap(notified);
      std::fill(notified.begin(), notified.end(), 0);
    }
    IterationStats stats{result.stats.size() + 1, recomputations, updates, ratio(recomputations, n),
                         seconds_since(pass_start)};
    if (finish_pass(result, stats, tau, options, settled)) break;
  }

  result.kappa = std::move(tau);
  result.seconds = seconds_since(start);
  return result;
}

PartialResult partial_and(const Graph& g, const CliqueSet& cs, std::span<const CliqueId> targets,
                          const EngineOptions& options) {
  if (targets.empty()) throw ConfigError("partial decomposition needs at least one target");
  PartialResult result;
  result.targets.assign(targets.begin(), targets.end());
  std::sort(result.targets.begin(), result.targets.end());
  result.targets.erase(std::unique(result.targets.begin(), result.targets.end()), result.targets.end());
  if (result.targets.back() >= cs.size()) {
    throw std::out_of_range("target clique id " + std::to_string(result.targets.back()) + " out of range");
  }

  const std::size_t m = result.targets.size();
  std::unordered_map<CliqueId, std::size_t> slot;
  slot.reserve(m * 2);
  result.tau.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    slot.emplace(result.targets[i], i);
    result.tau[i] = cs.s_degree(result.targets[i]);
  }
  auto read = [&](CliqueId o) {
    auto it = slot.find(o);
    return it == slot.end() ? cs.s_degree(o) : result.tau[it->second];
  };

  std::vector<unsigned char> active(m, 1);
  std::vector<unsigned char> notified(m, 0);
  std::vector<std::uint32_t> scratch;
  while (true) {
    ++result.iterations;
    for (std::size_t i = 0; i < m; ++i) {
      if (!active[i]) continue;
      notified[i] = 0;
      ++result.recomputations;
      const CliqueId id = result.targets[i];
      const std::uint32_t current = result.tau[i];
      const std::uint32_t h = evaluate(g, cs, id, current, read, scratch);
      if (h == current) continue;
      result.tau[i] = h;
      cs.for_each_s_clique(g, id, [&](VertexId, std::span<const CliqueId> others) {
        for (CliqueId o : others) {
          auto it = slot.find(o);
          if (it != slot.end() && h <= result.tau[it->second]) notified[it->second] = 1;
        }
      });
    }
    active.swap(notified);
    std::fill(notified.begin(), notified.end(), 0);
    if (std::find(active.begin(), active.end(), 1) == active.end()) {
      result.converged = true;
      break;
    }
    if (options.max_iterations != 0 && result.iterations >= options.max_iterations) break;
  }
  return result;
}

std::vector<CliqueId> ego_targets(const Graph& g, const CliqueSet& cs, CliqueId anchor) {
  if (anchor >= cs.size()) throw std::out_of_range("anchor clique id " + std::to_string(anchor) + " out of range");
  std::vector<CliqueId> ids{anchor};
  cs.for_each_s_clique(g, anchor, [&](VertexId, std::span<const CliqueId> others) {
    ids.insert(ids.end(), others.begin(), others.end());
  });
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::uint32_t estimate_kappa(const Graph& g, const CliqueSet& cs, CliqueId anchor) {
  auto targets = ego_targets(g, cs, anchor);
  return partial_and(g, cs, targets).tau_of(anchor);
}

std::uint32_t estimate_vertex_core(const Graph& g, const CliqueSet& cs, VertexId v) {
  if (cs.r() != 1) throw ConfigError("core estimation needs the vertex clique set (r=1)");
  return estimate_kappa(g, cs, v);
}

std::uint32_t estimate_edge_truss(const Graph& g, const CliqueSet& cs, CliqueId edge) {
  if (cs.r() != 2) throw ConfigError("truss estimation needs the edge clique set (r=2)");
  return estimate_kappa(g, cs, edge);
}

}  // namespace nucleus
