#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "nucleus/graph.hpp"

namespace nucleus {

using CliqueId = std::uint32_t;

// The three supported decompositions; the value is r (s = r + 1).
enum class Decomposition : int { core = 1, truss = 2, nucleus34 = 3 };

inline int clique_size(Decomposition d) { return static_cast<int>(d); }
std::string_view to_string(Decomposition d);
Decomposition parse_decomposition(std::string_view name);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One s-clique containing an anchor r-clique: its sorted vertex tuple and the
/// ids of the other r-cliques it contains.
struct SCliqueVisit {
  std::vector<VertexId> vertices;
  std::vector<CliqueId> others;
};

/// Indexed r-cliques of a graph (r in {1, 2, 3}) with their s-degrees for
/// s = r + 1. s-cliques are never stored; for_each_s_clique rediscovers them
/// by intersecting adjacency rows.
///
/// Ids are assigned in lexicographic order of the sorted vertex tuples, so
/// vertex ids for r = 1, (u, v) order for edges and (a, b, c) order for
/// triangles.
class CliqueSet {
 public:
  // Throws ConfigError for unsupported r.
  static CliqueSet enumerate(const Graph& g, int r);
  static CliqueSet enumerate(const Graph& g, Decomposition d) { return enumerate(g, clique_size(d)); }

  int r() const { return r_; }
  int s() const { return r_ + 1; }
  std::size_t size() const { return s_degree_.size(); }
  std::size_t vertex_count() const { return vertex_count_; }

  std::span<const VertexId> vertices(CliqueId id) const {
    if (r_ == 1) return {&identity_[id], 1};
    return {tuples_.data() + static_cast<std::size_t>(id) * r_, static_cast<std::size_t>(r_)};
  }
  std::uint32_t s_degree(CliqueId id) const { return s_degree_[id]; }
  std::span<const std::uint32_t> s_degrees() const { return s_degree_; }
  std::uint32_t max_s_degree() const { return max_s_degree_; }

  // Reverse index: id of the r-clique with these vertices (any order).
  std::optional<CliqueId> find(std::span<const VertexId> vertices) const;

  // Calls f(extra_vertex, others) once per s-clique containing `id`, where the
  // s-clique is vertices(id) + extra_vertex and `others` holds the ids of its
  // r-cliques other than `id` (r of them). If f returns bool, returning false
  // stops the scan. Read-only; safe to call concurrently.
  template <class F>
  void for_each_s_clique(const Graph& g, CliqueId id, F&& f) const;

 private:
  CliqueId edge_at_slot(std::size_t slot) const { return slot_edge_[slot]; }
  CliqueId triangle_id(VertexId a, VertexId b, VertexId c) const;  // any order, must exist
  std::optional<CliqueId> lookup_triangle(VertexId a, VertexId b, VertexId c) const;  // a < b < c
  static std::uint64_t triangle_hash(VertexId a, VertexId b, VertexId c);

  struct TriangleSlot {
    VertexId a, b, c;
    CliqueId id;
  };

  int r_ = 0;
  std::size_t vertex_count_ = 0;
  std::vector<VertexId> identity_;        // r = 1: vertices(id) storage
  std::vector<VertexId> tuples_;          // r >= 2: flat sorted tuples
  std::vector<std::uint32_t> s_degree_;
  std::uint32_t max_s_degree_ = 0;
  std::vector<CliqueId> slot_edge_;       // r >= 2: adjacency slot -> edge id
  std::vector<TriangleSlot> tri_table_;   // r = 3: open addressing
  std::size_t tri_mask_ = 0;
};

// Materialized form of for_each_s_clique. Throws std::out_of_range for an
// invalid id.
std::vector<SCliqueVisit> s_cliques_containing(const Graph& g, const CliqueSet& cs, CliqueId id);

namespace detail {

template <class F, class... Args>
inline bool invoke_continue(F& f, Args&&... args) {
  if constexpr (std::is_same_v<std::invoke_result_t<F&, Args...>, bool>) {
    return f(std::forward<Args>(args)...);
  } else {
    f(std::forward<Args>(args)...);
    return true;
  }
}

}  // namespace detail

template <class F>
void CliqueSet::for_each_s_clique(const Graph& g, CliqueId id, F&& f) const {
  if (r_ == 1) {
    for (VertexId u : g.row(id)) {
      const CliqueId other[1] = {u};
      if (!detail::invoke_continue(f, u, std::span<const CliqueId>(other, 1))) return;
    }
    return;
  }

  if (r_ == 2) {
    const VertexId u = tuples_[2 * static_cast<std::size_t>(id)];
    const VertexId v = tuples_[2 * static_cast<std::size_t>(id) + 1];
    auto nu = g.row(u);
    auto nv = g.row(v);
    const std::size_t bu = g.row_begin(u), bv = g.row_begin(v);
    std::size_t i = 0, j = 0;
    while (i < nu.size() && j < nv.size()) {
      if (nu[i] < nv[j]) {
        ++i;
      } else if (nv[j] < nu[i]) {
        ++j;
      } else {
        const CliqueId other[2] = {slot_edge_[bu + i], slot_edge_[bv + j]};
        if (!detail::invoke_continue(f, nu[i], std::span<const CliqueId>(other, 2))) return;
        ++i;
        ++j;
      }
    }
    return;
  }

  const std::size_t base = 3 * static_cast<std::size_t>(id);
  const VertexId a = tuples_[base], b = tuples_[base + 1], c = tuples_[base + 2];
  auto na = g.row(a), nb = g.row(b), nc = g.row(c);
  std::size_t i = 0, j = 0, k = 0;
  while (i < na.size() && j < nb.size() && k < nc.size()) {
    const VertexId w = std::max({na[i], nb[j], nc[k]});
    if (na[i] < w) {
      ++i;
    } else if (nb[j] < w) {
      ++j;
    } else if (nc[k] < w) {
      ++k;
    } else {
      const CliqueId other[3] = {triangle_id(a, b, w), triangle_id(a, c, w), triangle_id(b, c, w)};
      if (!detail::invoke_continue(f, w, std::span<const CliqueId>(other, 3))) return;
      ++i;
      ++j;
      ++k;
    }
  }
}

inline CliqueId CliqueSet::triangle_id(VertexId a, VertexId b, VertexId c) const {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return *lookup_triangle(a, b, c);
}

inline std::uint64_t CliqueSet::triangle_hash(VertexId a, VertexId b, VertexId c) {
  std::uint64_t h = (static_cast<std::uint64_t>(a) * 0x9E3779B97F4A7C15ULL) ^
                    (static_cast<std::uint64_t>(b) * 0xC2B2AE3D27D4EB4FULL) ^
                    (static_cast<std::uint64_t>(c) * 0x165667B19E3779F9ULL);
  return h ^ (h >> 29);
}

inline std::optional<CliqueId> CliqueSet::lookup_triangle(VertexId a, VertexId b, VertexId c) const {
  for (std::size_t pos = triangle_hash(a, b, c) & tri_mask_;; pos = (pos + 1) & tri_mask_) {
    const TriangleSlot& slot = tri_table_[pos];
    if (slot.id == UINT32_MAX) return std::nullopt;
    if (slot.a == a && slot.b == b && slot.c == c) return slot.id;
  }
}

}  // namespace nucleus
