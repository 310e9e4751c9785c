#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sodsim {

inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace rng_detail {

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace rng_detail

// Counter-based per-entity random stream. The i-th draw is a pure function of
// (root seed, entity id, i), so streams resume exactly and replay bit-identically.
class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t root_seed, std::string_view entity)
      : entity_(entity),
        stream_seed_(rng_detail::mix64(root_seed ^ fnv1a64(entity))) {}

  std::uint64_t next_u64() {
    ++counter_;
    return rng_detail::mix64(stream_seed_ + counter_ * rng_detail::kGamma);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_range(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  bool bernoulli(double p) { return next_double() < p; }

  const std::string& entity() const { return entity_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::string entity_;
  std::uint64_t stream_seed_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace sodsim
