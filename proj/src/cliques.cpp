#include "nucleus/cliques.hpp"

#include <numeric>
#include <string>

#include <omp.h>

namespace nucleus {

std::string_view to_string(Decomposition d) {
  switch (d) {
    case Decomposition::core: return "core";
    case Decomposition::truss: return "truss";
    case Decomposition::nucleus34: return "nucleus34";
  }
  return "?";
}

Decomposition parse_decomposition(std::string_view name) {
  if (name == "core") return Decomposition::core;
  if (name == "truss") return Decomposition::truss;
  if (name == "nucleus34") return Decomposition::nucleus34;
  throw ConfigError("unknown decomposition '" + std::string(name) + "' (core|truss|nucleus34)");
}

namespace {

std::size_t intersection_size(std::span<const VertexId> a, std::span<const VertexId> b) {
  std::size_t i = 0, j = 0, n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

// Triangles as sorted triples, each found once from its lowest-ranked vertex
// under the (degree, id) orientation.
std::vector<std::array<VertexId, 3>> list_triangles(const Graph& g) {
  const auto n = static_cast<VertexId>(g.vertex_count());
  auto ranks_below = [&](VertexId u, VertexId v) {
    return g.degree(u) < g.degree(v) || (g.degree(u) == g.degree(v) && u < v);
  };

  std::vector<std::size_t> out_begin(static_cast<std::size_t>(n) + 1, 0);
  for (VertexId u = 0; u < n; ++u) {
    std::size_t k = 0;
    for (VertexId v : g.row(u)) k += ranks_below(u, v);
    out_begin[u + 1] = out_begin[u] + k;
  }
  std::vector<VertexId> out(out_begin.back());
#pragma omp parallel for schedule(dynamic, 256)
  for (VertexId u = 0; u < n; ++u) {
    std::size_t k = out_begin[u];
    for (VertexId v : g.row(u)) {
      if (ranks_below(u, v)) out[k++] = v;
    }
  }
  auto out_row = [&](VertexId u) {
    return std::span<const VertexId>(out.data() + out_begin[u], out.data() + out_begin[u + 1]);
  };

  std::vector<std::vector<std::array<VertexId, 3>>> per_thread(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    auto& local = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 64)
    for (VertexId u = 0; u < n; ++u) {
      auto ou = out_row(u);
      for (VertexId v : ou) {
        auto ov = out_row(v);
        std::size_t i = 0, j = 0;
        while (i < ou.size() && j < ov.size()) {
          if (ou[i] < ov[j]) {
            ++i;
          } else if (ov[j] < ou[i]) {
            ++j;
          } else {
            std::array<VertexId, 3> t{u, v, ou[i]};
            std::sort(t.begin(), t.end());
            local.push_back(t);
            ++i;
            ++j;
          }
        }
      }
    }
  }

  std::vector<std::array<VertexId, 3>> all;
  std::size_t total = 0;
  for (auto& v : per_thread) total += v.size();
  all.reserve(total);
  for (auto& v : per_thread) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

CliqueSet CliqueSet::enumerate(const Graph& g, int r) {
  if (r < 1 || r > 3) {
    throw ConfigError("unsupported clique size r=" + std::to_string(r) + " (supported: 1, 2, 3)");
  }
  CliqueSet cs;
  cs.r_ = r;
  cs.vertex_count_ = g.vertex_count();
  const auto n = static_cast<VertexId>(g.vertex_count());

  if (r == 1) {
    cs.identity_.resize(n);
    std::iota(cs.identity_.begin(), cs.identity_.end(), VertexId{0});
    cs.s_degree_.resize(n);
    for (VertexId v = 0; v < n; ++v) cs.s_degree_[v] = static_cast<std::uint32_t>(g.degree(v));
  } else if (r == 2) {
    if (g.edge_count() >= UINT32_MAX) throw GraphError("too many edges for 32-bit clique ids");
    // Edge ids: (u, v) with u < v in lexicographic order.
    std::vector<CliqueId> first_edge(static_cast<std::size_t>(n) + 1, 0);
    for (VertexId u = 0; u < n; ++u) {
      auto row = g.row(u);
      auto above = static_cast<CliqueId>(row.end() - std::upper_bound(row.begin(), row.end(), u));
      first_edge[u + 1] = first_edge[u] + above;
    }
    cs.slot_edge_.resize(g.adjacency().size());
#pragma omp parallel for schedule(dynamic, 256)
    for (VertexId u = 0; u < n; ++u) {
      auto row = g.row(u);
      const std::size_t base = g.row_begin(u);
      auto split = static_cast<std::size_t>(std::upper_bound(row.begin(), row.end(), u) - row.begin());
      for (std::size_t i = split; i < row.size(); ++i) {
        cs.slot_edge_[base + i] = first_edge[u] + static_cast<CliqueId>(i - split);
      }
      for (std::size_t i = 0; i < split; ++i) {
        VertexId w = row[i];
        auto wrow = g.row(w);
        auto wsplit = std::upper_bound(wrow.begin(), wrow.end(), w) - wrow.begin();
        auto pos = std::lower_bound(wrow.begin(), wrow.end(), u) - wrow.begin();
        cs.slot_edge_[base + i] = first_edge[w] + static_cast<CliqueId>(pos - wsplit);
      }
    }

    cs.tuples_.resize(2 * g.edge_count());
    std::size_t k = 0;
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v : g.row(u)) {
        if (v > u) {
          cs.tuples_[k++] = u;
          cs.tuples_[k++] = v;
        }
      }
    }
    const std::size_t m = g.edge_count();
    cs.s_degree_.resize(m);
#pragma omp parallel for schedule(dynamic, 256)
    for (std::size_t e = 0; e < m; ++e) {
      cs.s_degree_[e] =
          static_cast<std::uint32_t>(intersection_size(g.row(cs.tuples_[2 * e]), g.row(cs.tuples_[2 * e + 1])));
    }
  } else {
    auto triangles = list_triangles(g);
    if (triangles.size() >= UINT32_MAX) throw GraphError("too many triangles for 32-bit clique ids");
    const std::size_t t = triangles.size();
    cs.tuples_.resize(3 * t);
    for (std::size_t i = 0; i < t; ++i) {
      std::copy(triangles[i].begin(), triangles[i].end(), cs.tuples_.begin() + static_cast<std::ptrdiff_t>(3 * i));
    }
    triangles.clear();
    triangles.shrink_to_fit();

    std::size_t cap = 2;
    while (cap < 2 * t) cap <<= 1;
    cs.tri_table_.assign(cap, TriangleSlot{0, 0, 0, UINT32_MAX});
    cs.tri_mask_ = cap - 1;
    for (std::size_t i = 0; i < t; ++i) {
      const VertexId a = cs.tuples_[3 * i], b = cs.tuples_[3 * i + 1], c = cs.tuples_[3 * i + 2];
      std::size_t pos = triangle_hash(a, b, c) & cs.tri_mask_;
      while (cs.tri_table_[pos].id != UINT32_MAX) pos = (pos + 1) & cs.tri_mask_;
      cs.tri_table_[pos] = TriangleSlot{a, b, c, static_cast<CliqueId>(i)};
    }

    cs.s_degree_.resize(t);
#pragma omp parallel for schedule(dynamic, 256)
    for (std::size_t i = 0; i < t; ++i) {
      std::uint32_t count = 0;
      cs.for_each_s_clique(g, static_cast<CliqueId>(i), [&](VertexId, std::span<const CliqueId>) { ++count; });
      cs.s_degree_[i] = count;
    }
  }

  for (auto d : cs.s_degree_) cs.max_s_degree_ = std::max(cs.max_s_degree_, d);
  return cs;
}

std::optional<CliqueId> CliqueSet::find(std::span<const VertexId> vertices) const {
  if (vertices.size() != static_cast<std::size_t>(r_)) return std::nullopt;
  std::array<VertexId, 3> key{};
  std::copy(vertices.begin(), vertices.end(), key.begin());
  std::sort(key.begin(), key.begin() + r_);
  for (int i = 0; i < r_; ++i) {
    if (key[i] >= vertex_count_) return std::nullopt;
    if (i > 0 && key[i] == key[i - 1]) return std::nullopt;
  }
  if (r_ == 1) return key[0];
  if (r_ == 3) return lookup_triangle(key[0], key[1], key[2]);

  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    const VertexId u = tuples_[2 * mid], v = tuples_[2 * mid + 1];
    if (u < key[0] || (u == key[0] && v < key[1])) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < size() && tuples_[2 * lo] == key[0] && tuples_[2 * lo + 1] == key[1]) return static_cast<CliqueId>(lo);
  return std::nullopt;
}

std::vector<SCliqueVisit> s_cliques_containing(const Graph& g, const CliqueSet& cs, CliqueId id) {
  if (id >= cs.size()) {
    throw std::out_of_range("clique id " + std::to_string(id) + " out of range (count=" + std::to_string(cs.size()) +
                            ")");
  }
  std::vector<SCliqueVisit> visits;
  auto anchor = cs.vertices(id);
  cs.for_each_s_clique(g, id, [&](VertexId extra, std::span<const CliqueId> others) {
    SCliqueVisit visit;
    visit.vertices.assign(anchor.begin(), anchor.end());
    visit.vertices.push_back(extra);
    std::sort(visit.vertices.begin(), visit.vertices.end());
    visit.others.assign(others.begin(), others.end());
    visits.push_back(std::move(visit));
  });
  return visits;
}

}  // namespace nucleus
