#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace multiwinner {

// SplitMix64 (Steele, Lea, Flood 2014). Counter-based: state advances by a
// fixed odd gamma, output is a bijective mix of the counter. Substreams are
// derived by mixing a stream index into the seed, so any (seed, index) pair
// names a reproducible stream independent of evaluation order.
class rng64 {
 public:
  explicit rng64(std::uint64_t seed) : state_(seed) {}

  static rng64 substream(std::uint64_t seed, std::uint64_t index) {
    // run the mixer twice so (seed, index) and (seed', index') collide only
    // if the 128-bit inputs do
    rng64 r(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
    r.next_u64();
    return r;
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), n > 0; rejection sampling, no modulo bias
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // uniform in [0, 1) with 53 random bits
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    // Fisher-Yates
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// uniform k-subset of {0..m-1}, returned sorted (partial Fisher-Yates)
template <typename T>
std::vector<T> sample_subset(int m, int k, rng64& rng) {
  std::vector<T> pool(m);
  for (int i = 0; i < m; ++i) pool[i] = static_cast<T>(i);
  for (int i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(m - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace multiwinner
