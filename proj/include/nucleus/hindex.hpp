#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nucleus {

/// Streaming h-index over values whose h-index is known not to exceed `cap`.
///
/// Values are clamped to `cap` and counted in a dense table, so finishing is a
/// single suffix scan over cap + 1 buckets. Once `cap` values at or above
/// `cap` have been seen the result is fixed at `cap` and saturated() turns
/// true; callers can stop feeding values at that point.
class HIndexAccumulator {
 public:
  explicit HIndexAccumulator(std::uint32_t cap);
  // Reuses `scratch` as the counting table (resized and zeroed as needed).
  HIndexAccumulator(std::uint32_t cap, std::vector<std::uint32_t>& scratch);

  void add(std::uint32_t value) {
    const std::uint32_t v = value < cap_ ? value : cap_;
    ++counts_[v];
    if (v == cap_) ++at_cap_;
  }
  bool saturated() const { return at_cap_ >= cap_; }
  std::uint32_t cap() const { return cap_; }
  std::uint32_t finish() const;

 private:
  std::vector<std::uint32_t> owned_;
  std::uint32_t* counts_;
  std::uint32_t cap_;
  std::uint32_t at_cap_ = 0;
};

// Largest k such that at least k of the values are >= k.
std::uint32_t h_index(std::span<const std::uint32_t> values);

// Same, with the clique's current tau as an upper-bound hint: the scan stops
// as soon as `current_tau` values >= current_tau have been seen. Exact
// whenever the true h-index is <= current_tau.
std::uint32_t h_index(std::span<const std::uint32_t> values, std::optional<std::uint32_t> current_tau);

}  // namespace nucleus
