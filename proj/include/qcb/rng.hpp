#ifndef QCB_RNG_HPP
#define QCB_RNG_HPP

// Counter-based 64-bit generator (splitmix64 finalizer over key + counter).
// Split streams give reproducible parallel campaigns: the output of a stream
// depends only on (seed, stream nonce, counter), never on sampling order in
// other streams.

#include <cmath>
#include <cstdint>

namespace qcb {

class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed + 0x9E3779B97F4A7C15ULL * mix(stream + 0x243F6A8885A308D3ULL))) {}

  // derive an independent stream; deterministic in (this stream's key, nonce)
  CounterRng split(std::uint64_t nonce) const { return CounterRng(key_, nonce + 1); }

  std::uint64_t next_u64() {
    counter_ += 0x9E3779B97F4A7C15ULL;
    return mix(key_ ^ counter_);
  }

  // uniform double in [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform double in [lo,hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  std::uint64_t uniform_index(std::uint64_t n) { return n ? next_u64() % n : 0; }

  // standard normal via Box-Muller (second value cached)
  double gaussian() {
    if (has_cache_) {
      has_cache_ = false;
      return cache_;
    }
    double u1 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586 * u2;
    cache_ = r * std::sin(t);
    has_cache_ = true;
    return r * std::cos(t);
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cache_ = 0.0;
  bool has_cache_ = false;
};

}  // namespace qcb

#endif  // QCB_RNG_HPP
