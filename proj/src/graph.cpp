#include "nucleus/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <string_view>
#include <unordered_map>

namespace nucleus {

ParseError::ParseError(std::size_t line, const std::string& what)
    : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}

struct GraphBuilder {
  // Sorted, deduplicated (u < v) pairs -> symmetric CSR.
  static Graph build(VertexId n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
    Graph g;
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (auto [u, v] : edges) {
      ++g.offsets_[u + 1];
      ++g.offsets_[v + 1];
    }
    for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
    g.adj_.resize(edges.size() * 2);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // Edges are sorted by (u, v) with u < v: writing every row's smaller
    // neighbors first, then its larger ones, leaves each row ascending.
    for (auto [u, v] : edges) g.adj_[cursor[v]++] = u;
    for (auto [u, v] : edges) g.adj_[cursor[u]++] = v;
    return g;
  }

  static std::size_t normalize(std::vector<std::pair<VertexId, VertexId>>& edges) {
    std::size_t loops = 0;
    std::size_t out = 0;
    for (auto [u, v] : edges) {
      if (u == v) {
        ++loops;
        continue;
      }
      edges[out++] = {std::min(u, v), std::max(u, v)};
    }
    edges.resize(out);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return loops;
  }

  static void set_labels(Graph& g, std::vector<std::uint64_t> labels, std::uint64_t offset) {
    g.labels_ = std::move(labels);
    g.label_offset_ = offset;
  }
};

Graph Graph::from_edges(VertexId n, std::span<const std::pair<VertexId, VertexId>> edges) {
  std::vector<std::pair<VertexId, VertexId>> normalized(edges.begin(), edges.end());
  for (auto [u, v] : normalized) {
    if (u >= n || v >= n) throw GraphError("edge endpoint out of range");
  }
  GraphBuilder::normalize(normalized);
  return GraphBuilder::build(n, normalized);
}

std::span<const VertexId> Graph::neighbors(VertexId v) const {
  if (v >= vertex_count()) {
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range (n=" +
                            std::to_string(vertex_count()) + ")");
  }
  return row(v);
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  if (u >= vertex_count() || v >= vertex_count()) return false;
  auto r = degree(u) <= degree(v) ? row(u) : row(v);
  return std::binary_search(r.begin(), r.end(), degree(u) <= degree(v) ? v : u);
}

std::optional<VertexId> Graph::find_label(std::uint64_t label) const {
  if (labels_.empty()) {
    if (label < label_offset_ || label - label_offset_ >= vertex_count()) return std::nullopt;
    return static_cast<VertexId>(label - label_offset_);
  }
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<VertexId>(it - labels_.begin());
}

namespace {

std::string_view trim_left(std::string_view s) {
  auto i = s.find_first_not_of(" \t\r");
  return i == std::string_view::npos ? std::string_view{} : s.substr(i);
}

bool next_token(std::string_view& rest, std::string_view& token) {
  rest = trim_left(rest);
  if (rest.empty()) return false;
  auto end = rest.find_first_of(" \t\r,");
  token = rest.substr(0, end);
  rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end + 1);
  return true;
}

std::uint64_t parse_id(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a non-negative integer vertex id, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, const LoadOptions& options) {
  LoadStats stats;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  const std::uint64_t base = options.base == LoadOptions::Base::one ? 1 : 0;

  std::string line;
  while (std::getline(in, line)) {
    ++stats.lines;
    std::string_view rest = trim_left(line);
    if (rest.empty()) continue;
    if (!options.comment_prefix.empty() && rest.starts_with(options.comment_prefix)) {
      ++stats.comment_lines;
      continue;
    }
    std::string_view a, b;
    if (!next_token(rest, a) || !next_token(rest, b)) {
      throw ParseError(stats.lines, "expected two vertex ids");
    }
    std::uint64_t u = parse_id(a, stats.lines);
    std::uint64_t v = parse_id(b, stats.lines);
    if (u < base || v < base) throw ParseError(stats.lines, "vertex id 0 in a one-indexed file");
    raw.emplace_back(u, v);
  }
  if (raw.empty()) throw GraphError("edge list contains no edges");
  stats.edges_read = raw.size();

  std::unordered_map<std::uint64_t, VertexId> first_seen;
  std::vector<std::uint64_t> seen_order;
  std::uint64_t max_id = 0;
  for (auto [u, v] : raw) {
    for (auto x : {u, v}) {
      max_id = std::max(max_id, x);
      if (first_seen.try_emplace(x, static_cast<VertexId>(seen_order.size())).second) seen_order.push_back(x);
    }
  }

  const std::uint64_t range = max_id - base + 1;
  bool compact = options.remap == LoadOptions::Remap::always ||
                 (options.remap == LoadOptions::Remap::automatic && range > 2 * seen_order.size());
  const std::uint64_t n = compact ? seen_order.size() : range;
  if (n > std::numeric_limits<VertexId>::max()) throw GraphError("too many vertices for 32-bit ids");

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) {
    if (compact) {
      edges.emplace_back(first_seen.at(u), first_seen.at(v));
    } else {
      edges.emplace_back(static_cast<VertexId>(u - base), static_cast<VertexId>(v - base));
    }
  }
  raw.clear();
  raw.shrink_to_fit();

  stats.self_loops = GraphBuilder::normalize(edges);
  stats.duplicates = stats.edges_read - stats.self_loops - edges.size();
  stats.remapped = compact;

  LoadedGraph out{GraphBuilder::build(static_cast<VertexId>(n), edges), stats};
  if (compact) {
    GraphBuilder::set_labels(out.graph, std::move(seen_order), 0);
  } else {
    GraphBuilder::set_labels(out.graph, {}, base);
  }
  return out;
}

LoadedGraph load_edge_list_file(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path.string());
  return load_edge_list(in, options);
}

}  // namespace nucleus
