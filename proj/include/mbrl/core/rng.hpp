#pragma once

#include <cmath>
#include <cstdint>

#include "mbrl/core/error.hpp"

namespace mbrl {

// Counter-based random stream built on the SplitMix64 finalizer.
//
// State layout: a per-stream 64-bit key derived from (root_seed, stream_id)
// plus a 64-bit draw counter. Draw i (1-based) of stream (s, id) is
//
//   mix64(key + PHI * i),   key = mix64(s + PHI * (id + 1))
//
// with PHI = 0x9E3779B97F4A7C15 and mix64 the SplitMix64 finalizer. Equal
// (root_seed, stream_id) pairs reproduce the same sequence forever; streams
// with different ids are independent sequences from the same root seed.
// Single consumer; copying a stream copies its position.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t root_seed, std::uint64_t stream_id)
      : key_(mix64(root_seed + kPhi * (stream_id + 1))), counter_(0) {}

  static RngStream fork(std::uint64_t root_seed, std::uint64_t stream_id) {
    return RngStream(root_seed, stream_id);
  }

  std::uint64_t next_u64() {
    counter_ += 1;
    return mix64(key_ + kPhi * counter_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased uniform over {0, ..., n-1} (Lemire rejection).
  int uniform_int(int n) {
    if (n < 1) throw ContractError("uniform_int: n must be >= 1");
    const std::uint64_t range = static_cast<std::uint64_t>(n);
    std::uint64_t x = next_u64();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * range;
    std::uint64_t lo = static_cast<std::uint64_t>(m);
    if (lo < range) {
      const std::uint64_t threshold = (0 - range) % range;
      while (lo < threshold) {
        x = next_u64();
        m = static_cast<unsigned __int128>(x) * range;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<int>(m >> 64);
  }

  // Standard normal via Box-Muller; the spare draw is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  static constexpr std::uint64_t kPhi = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mbrl
