#pragma once

#include <cmath>
#include <cstdint>

namespace exclab::rng {

// 64-bit finalizer with full avalanche; bijective on 2^64.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// Counter-based stream: draw i of stream (seed, id) is mix64(key + (i+1)*gamma)
// where key is derived from (seed, id). Distinct pairs give independent-looking
// streams; the same pair replays bit-identical draws. at() gives O(1) random
// access, which lets estimators sample configurations lazily (one fixed bit per
// (sample, cell)) without materializing them.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream_id)
      : key_(derive_key(seed, stream_id)) {}

  std::uint64_t at(std::uint64_t counter) const {
    return mix64(key_ + (counter + 1) * kGamma);
  }

  std::uint64_t next_u64() { return at(ctr_++); }

  // Uniform on [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Exponential with the given rate (inversion; argument of log1p is in (-1,0]).
  double next_exp(double rate) { return -std::log1p(-next_unit()) / rate; }

  bool next_bernoulli(double p) { return next_unit() < p; }

  bool next_bit() { return next_u64() >> 63; }

  // Unbiased uniform integer in [0, n) (Lemire reduction with rejection).
  std::uint32_t next_below(std::uint32_t n) {
    std::uint64_t x = next_u64() >> 32;
    std::uint64_t m = x * n;
    auto lo = static_cast<std::uint32_t>(m);
    if (lo < n) {
      std::uint32_t t = (0u - n) % n;
      while (lo < t) {
        x = next_u64() >> 32;
        m = x * n;
        lo = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  // Independent child stream; children with distinct ids do not overlap the
  // parent's counter sequence.
  Stream substream(std::uint64_t id) const { return Stream(key_, mix64(id) ^ 0x6a09e667f3bcc909ULL); }

 private:
  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream_id) {
    return mix64(mix64(seed + kGamma) ^ mix64(stream_id * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL));
  }

  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

// Stable 64-bit tag for deriving named seed families from one user seed.
constexpr std::uint64_t tag(const char* s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (; *s; ++s) h = (h ^ static_cast<unsigned char>(*s)) * 0x100000001b3ULL;
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t t) {
  return mix64(mix64(seed) ^ t);
}

}  // namespace exclab::rng
