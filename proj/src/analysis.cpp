#include "nucleus/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace nucleus {

DegreeLevels degree_levels(const Graph& g, const CliqueSet& cs) {
  constexpr std::uint32_t kUnset = UINT32_MAX;
  const std::size_t n = cs.size();
  DegreeLevels out;
  out.level_of.assign(n, kUnset);
  if (n == 0) return out;

  std::vector<std::uint32_t> degree(cs.s_degrees().begin(), cs.s_degrees().end());
  // Lazy buckets: an id sits in bucket[d] once for every degree d it has held;
  // entries whose degree moved on or that were removed are skipped.
  std::vector<std::vector<CliqueId>> bucket(static_cast<std::size_t>(cs.max_s_degree()) + 1);
  for (CliqueId id = 0; id < n; ++id) bucket[degree[id]].push_back(id);

  std::size_t remaining = n;
  std::uint32_t lowest = 0;
  while (remaining > 0) {
    std::vector<CliqueId> level;
    while (level.empty()) {
      for (CliqueId id : bucket[lowest]) {
        if (out.level_of[id] == kUnset && degree[id] == lowest) level.push_back(id);
      }
      bucket[lowest].clear();
      if (level.empty()) ++lowest;
    }
    std::sort(level.begin(), level.end());
    const auto index = static_cast<std::uint32_t>(out.levels.size());
    for (CliqueId id : level) out.level_of[id] = index;

    for (CliqueId id : level) {
      cs.for_each_s_clique(g, id, [&](VertexId, std::span<const CliqueId> others) {
        for (CliqueId o : others) {
          const std::uint32_t lv = out.level_of[o];
          if (lv < index) return;               // s-clique already gone
          if (lv == index && o < id) return;    // removed by a lower id in this level
        }
        for (CliqueId o : others) {
          if (out.level_of[o] != kUnset) continue;
          const std::uint32_t d = --degree[o];
          bucket[d].push_back(o);
          lowest = std::min(lowest, d);
        }
      });
    }
    remaining -= level.size();
    out.levels.push_back(std::move(level));
  }
  return out;
}

namespace {

// Sum of t*(t-1)/2 over runs of equal adjacent keys.
template <class Eq>
std::int64_t tied_pairs(std::size_t n, Eq&& equal_to_previous) {
  std::int64_t total = 0, run = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (equal_to_previous(i)) {
      ++run;
    } else {
      total += run * (run - 1) / 2;
      run = 1;
    }
  }
  return total + run * (run - 1) / 2;
}

std::int64_t count_inversions(std::vector<std::uint32_t>& v, std::vector<std::uint32_t>& buffer, std::size_t lo,
                              std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = count_inversions(v, buffer, lo, mid) + count_inversions(v, buffer, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      buffer[k++] = v[j++];
    } else {
      buffer[k++] = v[i++];
    }
  }
  while (i < mid) buffer[k++] = v[i++];
  while (j < hi) buffer[k++] = v[j++];
  std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(lo), buffer.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

}  // namespace

double kendall_tau(std::span<const std::uint32_t> estimates, std::span<const std::uint32_t> exact) {
  if (estimates.size() != exact.size()) throw std::invalid_argument("kendall_tau: length mismatch");
  const std::size_t n = estimates.size();
  if (n < 2) throw std::invalid_argument("kendall_tau: need at least two values");

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return estimates[a] != estimates[b] ? estimates[a] < estimates[b] : exact[a] < exact[b];
  });

  const auto total = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t ties_x = tied_pairs(n, [&](std::size_t i) { return estimates[idx[i]] == estimates[idx[i - 1]]; });
  const std::int64_t ties_xy = tied_pairs(n, [&](std::size_t i) {
    return estimates[idx[i]] == estimates[idx[i - 1]] && exact[idx[i]] == exact[idx[i - 1]];
  });

  std::vector<std::uint32_t> y(n), buffer(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = exact[idx[i]];
  const std::int64_t swaps = count_inversions(y, buffer, 0, n);
  const std::int64_t ties_y = tied_pairs(n, [&](std::size_t i) { return y[i] == y[i - 1]; });

  const std::int64_t untied_x = total - ties_x;
  const std::int64_t untied_y = total - ties_y;
  if (untied_x == 0 || untied_y == 0) return (untied_x == 0 && untied_y == 0) ? 1.0 : 0.0;
  const auto numerator = static_cast<long double>(total - ties_x - ties_y + ties_xy - 2 * swaps);
  return static_cast<double>(numerator / std::sqrt(static_cast<long double>(untied_x) * untied_y));
}

double accuracy(std::span<const std::uint32_t> estimates, std::span<const std::uint32_t> exact) {
  if (estimates.size() != exact.size()) throw std::invalid_argument("accuracy: length mismatch");
  if (exact.empty()) return 1.0;
  std::size_t same = 0;
  for (std::size_t i = 0; i < exact.size(); ++i) same += estimates[i] == exact[i];
  return static_cast<double>(same) / static_cast<double>(exact.size());
}

std::vector<std::uint32_t> brute_force_kappa(const Graph& g, const CliqueSet& cs) {
  const std::size_t n = cs.size();
  if (n > kBruteForceLimit) {
    throw std::length_error("brute force kappa refuses " + std::to_string(n) + " r-cliques (limit " +
                            std::to_string(kBruteForceLimit) + ")");
  }
  std::vector<std::uint32_t> s_cliques;
  for (CliqueId id = 0; id < n; ++id) {
    cs.for_each_s_clique(g, id, [&](VertexId, std::span<const CliqueId> others) {
      std::uint32_t mask = 1u << id;
      for (CliqueId o : others) mask |= 1u << o;
      s_cliques.push_back(mask);
    });
  }
  std::sort(s_cliques.begin(), s_cliques.end());
  s_cliques.erase(std::unique(s_cliques.begin(), s_cliques.end()), s_cliques.end());

  std::vector<std::uint32_t> kappa(n, 0);
  std::vector<std::uint32_t> degree(n);
  for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
    std::fill(degree.begin(), degree.end(), 0u);
    for (std::uint32_t s : s_cliques) {
      if ((s & subset) != s) continue;
      for (std::uint32_t bits = s; bits != 0; bits &= bits - 1) ++degree[static_cast<std::size_t>(__builtin_ctz(bits))];
    }
    std::uint32_t min_degree = UINT32_MAX;
    for (std::uint32_t bits = subset; bits != 0; bits &= bits - 1) {
      min_degree = std::min(min_degree, degree[static_cast<std::size_t>(__builtin_ctz(bits))]);
    }
    for (std::uint32_t bits = subset; bits != 0; bits &= bits - 1) {
      auto& k = kappa[static_cast<std::size_t>(__builtin_ctz(bits))];
      k = std::max(k, min_degree);
    }
  }
  return kappa;
}

std::vector<CliqueId> max_subgraph(const Graph& g, const CliqueSet& cs, std::span<const std::uint32_t> kappa,
                                   CliqueId anchor) {
  if (anchor >= cs.size()) throw std::out_of_range("anchor clique id " + std::to_string(anchor) + " out of range");
  if (kappa.size() != cs.size()) throw std::invalid_argument("max_subgraph: kappa size mismatch");
  const std::uint32_t k = kappa[anchor];
  std::vector<char> seen(cs.size(), 0);
  std::vector<CliqueId> members{anchor};
  seen[anchor] = 1;
  for (std::size_t head = 0; head < members.size(); ++head) {
    cs.for_each_s_clique(g, members[head], [&](VertexId, std::span<const CliqueId> others) {
      for (CliqueId o : others) {
        if (kappa[o] < k) return;
      }
      for (CliqueId o : others) {
        if (!seen[o]) {
          seen[o] = 1;
          members.push_back(o);
        }
      }
    });
  }
  std::sort(members.begin(), members.end());
  return members;
}

IterationObserver ConvergenceTrace::observer() {
  return [this](const IterationStats& stats, std::span<const std::uint32_t> tau) { record(stats, tau); };
}

void ConvergenceTrace::record(const IterationStats& stats, std::span<const std::uint32_t> tau) {
  TraceRow row;
  row.iteration = stats.iteration;
  row.active_ratio = stats.active_ratio;
  row.accuracy = accuracy(tau, exact_);
  if (tau.size() >= 2) {
    row.kendall_tau = kendall_tau(tau, exact_);
  } else {
    row.kendall_tau = row.accuracy == 1.0 ? 1.0 : 0.0;
  }
  rows_.push_back(row);
}

void ConvergenceTrace::write_csv(std::ostream& out) const {
  out << "iteration,kendall_tau,active_ratio,accuracy\n";
  for (const auto& row : rows_) {
    out << row.iteration << ',' << row.kendall_tau << ',' << row.active_ratio << ',' << row.accuracy << '\n';
  }
}

}  // namespace nucleus
