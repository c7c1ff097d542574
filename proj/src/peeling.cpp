#include "nucleus/peeling.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace nucleus {

namespace {

// Bucket queue over integer degrees. vert holds ids sorted by current degree,
// bin[d] is the first position of degree d; decrementing an element swaps it
// to the front of its bin and shifts the bin boundary.
class BucketQueue {
 public:
  BucketQueue(std::vector<std::uint32_t> degree, std::vector<CliqueId> initial_order)
      : degree_(std::move(degree)), vert_(degree_.size()), pos_(degree_.size()) {
    std::uint32_t max_degree = 0;
    for (auto d : degree_) max_degree = std::max(max_degree, d);
    bin_.assign(static_cast<std::size_t>(max_degree) + 2, 0);
    for (auto d : degree_) ++bin_[d + 1];
    std::partial_sum(bin_.begin(), bin_.end(), bin_.begin());
    std::vector<std::size_t> next(bin_.begin(), bin_.end() - 1);
    for (CliqueId id : initial_order) {
      pos_[id] = next[degree_[id]]++;
      vert_[pos_[id]] = id;
    }
  }

  CliqueId at(std::size_t i) const { return vert_[i]; }
  std::uint32_t degree(CliqueId id) const { return degree_[id]; }

  void decrement(CliqueId id) {
    const std::uint32_t d = degree_[id];
    const std::size_t front = bin_[d];
    const CliqueId w = vert_[front];
    if (w != id) {
      std::swap(vert_[front], vert_[pos_[id]]);
      std::swap(pos_[w], pos_[id]);
    }
    ++bin_[d];
    --degree_[id];
  }

 private:
  std::vector<std::uint32_t> degree_;
  std::vector<CliqueId> vert_;
  std::vector<std::size_t> pos_;
  std::vector<std::size_t> bin_;
};

}  // namespace

std::vector<std::uint32_t> peel(const Graph& g, const CliqueSet& cs, const PeelOptions& options) {
  const std::size_t n = cs.size();
  std::vector<CliqueId> order(n);
  std::iota(order.begin(), order.end(), CliqueId{0});
  if (options.shuffle_seed) {
    std::mt19937_64 rng(*options.shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  BucketQueue queue({cs.s_degrees().begin(), cs.s_degrees().end()}, std::move(order));

  std::vector<std::uint32_t> kappa(n, 0);
  std::vector<char> processed(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const CliqueId id = queue.at(i);
    const std::uint32_t k = queue.degree(id);
    kappa[id] = k;
    cs.for_each_s_clique(g, id, [&](VertexId, std::span<const CliqueId> others) {
      for (CliqueId o : others) {
        if (processed[o]) return;
      }
      for (CliqueId o : others) {
        if (queue.degree(o) > k) queue.decrement(o);
      }
    });
    processed[id] = 1;
  }
  return kappa;
}

std::vector<std::uint32_t> core_numbers(const Graph& g) {
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::vector<std::uint32_t> degree(n);
  for (VertexId v = 0; v < n; ++v) degree[v] = static_cast<std::uint32_t>(g.degree(v));
  std::vector<CliqueId> order(n);
  std::iota(order.begin(), order.end(), CliqueId{0});
  BucketQueue queue(degree, std::move(order));

  std::vector<std::uint32_t> core(n, 0);
  std::vector<char> done(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const VertexId v = queue.at(i);
    core[v] = queue.degree(v);
    done[v] = 1;
    for (VertexId u : g.row(v)) {
      if (!done[u] && queue.degree(u) > core[v]) queue.decrement(u);
    }
  }
  return core;
}

}  // namespace nucleus
