#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nucleus {

using VertexId = std::uint32_t;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown for malformed edge-list lines; line() is 1-based.
class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct LoadOptions {
  enum class Base { zero, one };
  // automatic: compact ids only when most of the id range is unused.
  enum class Remap { automatic, never, always };

  Base base = Base::zero;
  std::string comment_prefix = "#";
  Remap remap = Remap::automatic;
};

struct LoadStats {
  std::size_t lines = 0;
  std::size_t comment_lines = 0;
  std::size_t edges_read = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
  bool remapped = false;
};

/// Immutable simple undirected graph in CSR form.
///
/// Neighbor slices are strictly ascending, so two adjacency rows can be
/// intersected with a linear merge. Each vertex carries the label it had in
/// the input file; ids are dense in [0, vertex_count).
class Graph {
 public:
  Graph() = default;

  // Builds from an arbitrary edge multiset: self-loops are dropped and
  // duplicate or reversed edges merged. Vertices in [0, n) are kept even
  // when isolated.
  static Graph from_edges(VertexId n, std::span<const std::pair<VertexId, VertexId>> edges);

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return adj_.size() / 2; }

  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  // Bounds-checked; throws std::out_of_range.
  std::span<const VertexId> neighbors(VertexId v) const;

  // Unchecked row access for inner loops.
  std::span<const VertexId> row(VertexId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::size_t row_begin(VertexId v) const { return offsets_[v]; }

  bool has_edge(VertexId u, VertexId v) const;

  std::uint64_t label(VertexId v) const { return labels_.empty() ? v + label_offset_ : labels_[v]; }
  std::optional<VertexId> find_label(std::uint64_t label) const;

  std::span<const std::size_t> offsets() const { return offsets_; }
  std::span<const VertexId> adjacency() const { return adj_; }

  bool operator==(const Graph&) const = default;

 private:
  friend struct GraphBuilder;

  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adj_;
  std::vector<std::uint64_t> labels_;  // empty: label = id + label_offset_
  std::uint64_t label_offset_ = 0;
};

struct LoadedGraph {
  Graph graph;
  LoadStats stats;
};

LoadedGraph load_edge_list(std::istream& in, const LoadOptions& options = {});
LoadedGraph load_edge_list_file(const std::filesystem::path& path, const LoadOptions& options = {});

}  // namespace nucleus
