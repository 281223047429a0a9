#ifndef FERERO_RANDOM_HPP_
#define FERERO_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ferero {

/// Seedable counter-free random stream (xoshiro256**) with hand-rolled
/// uniform/normal draws so that identical seeds give identical streams on
/// any platform or standard library. Runs, suites, and samplers all derive
/// independent substreams from one base seed.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) {
    // splitmix64 seeding, standard for xoshiro-family generators
    std::uint64_t z = seed;
    for (auto& s : state_) {
      z += 0x9e3779b97f4a7c15ULL;
      std::uint64_t x = z;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      s = x ^ (x >> 31);
    }
  }

  /// Independent stream for (seed, stream_id); used to decouple the
  /// initialization draws from the sampler draws within one run.
  static RandomStream substream(std::uint64_t seed, std::uint64_t stream_id) {
    return RandomStream(seed ^ (0xd1342543de82ef95ULL * (stream_id + 1)));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform draw in the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform draw in [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // multiply-shift; bias is negligible for n << 2^64
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace ferero

#endif  // FERERO_RANDOM_HPP_
