#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace levelscreen {

// splitmix64 finalizer; used to derive independent substreams from one seed.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

// mt19937_64 with hand-rolled sampling helpers. The engine is fully specified
// by the standard; std::uniform_*_distribution is not, so drawing through
// these helpers keeps corpora and fits byte-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound). Modulo bias is negligible for bound << 2^64.
  std::uint64_t uniform_u64(std::uint64_t bound) {
    return bound == 0 ? 0 : next_u64() % bound;
  }

  // Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<int>(uniform_u64(
                    static_cast<std::uint64_t>(hi) - lo + 1));
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform_real() < p; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_u64(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace levelscreen
