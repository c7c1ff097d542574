#include "nucleus/hindex.hpp"

#include <algorithm>

namespace nucleus {

HIndexAccumulator::HIndexAccumulator(std::uint32_t cap) : owned_(static_cast<std::size_t>(cap) + 1, 0), cap_(cap) {
  counts_ = owned_.data();
}

HIndexAccumulator::HIndexAccumulator(std::uint32_t cap, std::vector<std::uint32_t>& scratch) : cap_(cap) {
  const std::size_t need = static_cast<std::size_t>(cap) + 1;
  if (scratch.size() < need) scratch.resize(need);
  std::fill_n(scratch.begin(), need, 0u);
  counts_ = scratch.data();
}

std::uint32_t HIndexAccumulator::finish() const {
  if (saturated()) return cap_;
  std::uint32_t at_least = 0;
  for (std::uint32_t k = cap_; k > 0; --k) {
    at_least += counts_[k];
    if (at_least >= k) return k;
  }
  return 0;
}

std::uint32_t h_index(std::span<const std::uint32_t> values) {
  return h_index(values, std::nullopt);
}

std::uint32_t h_index(std::span<const std::uint32_t> values, std::optional<std::uint32_t> current_tau) {
  auto cap = static_cast<std::uint32_t>(values.size());
  if (current_tau) cap = std::min(cap, *current_tau);
  HIndexAccumulator acc(cap);
  for (auto v : values) {
    acc.add(v);
    if (acc.saturated()) break;
  }
  return acc.finish();
}

}  // namespace nucleus
