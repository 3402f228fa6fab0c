#pragma once

#include <cstdint>
#include <random>

namespace enflo {

// Seed-splitting scheme used everywhere randomness appears.
//
// Every operation takes one top-level `seed`; internal work units (a sample
// chunk, a pair index, a per-scale sampler) each get an independent stream
// derived as
//
//     stream(seed, id) = mt19937_64( splitmix64(seed ^ (id * PHI)) )
//
// with PHI = 0x9e3779b97f4a7c15. Chunk ids are fixed by the work partition,
// never by thread identity, so parallel runs reproduce the serial result
// bit for bit. Integer draws use rejection sampling (no reliance on the
// implementation-defined std::uniform_int_distribution).

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, n), n >= 1.
  std::uint64_t next_below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform on [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    next_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return (eng_() >> 63) != 0; }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

inline RngStream derive_stream(std::uint64_t seed, std::uint64_t streamId) {
  return RngStream(seed ^ (streamId * 0x9e3779b97f4a7c15ull));
}

}  // namespace enflo
