#ifndef SPINMIRROR_RNG_HPP
#define SPINMIRROR_RNG_HPP

#include <cstdint>

namespace spinmirror {

// Small deterministic generator (splitmix64). Used everywhere randomness is
// needed so results are reproducible across platforms and standard-library
// versions, which std::mt19937 distributions are not.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return (next() >> 11) * 0x1.0p-53; }  // [0, 1)

  // unbiased enough for test-data purposes
  std::uint64_t below(std::uint64_t m) { return next() % m; }
};

// Stateless per-index sub-seed derivation for independent parallel streams.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0xbf58476d1ce4e5b9ULL * (index + 1)));
  return g.next();
}

}  // namespace spinmirror

#endif
