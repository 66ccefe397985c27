#pragma once

#include <cstdint>
#include <vector>

#include "exclab/errors.hpp"
#include "exclab/rng.hpp"

namespace exclab {

// Packed two-state configuration over a region's cells; bit 1 <=> omega = +1
// (open), bit 0 <=> omega = -1 (closed).
class Config {
 public:
  Config() = default;
  explicit Config(std::uint32_t n) : n_(n), w_((n + 63) / 64, 0) {}

  // iid Bernoulli(p) bits. p = 1/2 takes one stream word per 64 cells, other
  // p one draw per cell.
  static Config random(std::uint32_t n, double p, rng::Stream& st) {
    if (!(p >= 0 && p <= 1)) throw InvalidParameter("Config::random: p outside [0,1]");
    Config c(n);
    if (p == 0.5) {
      for (std::size_t k = 0; k < c.w_.size(); ++k) c.w_[k] = st.next_u64();
      c.mask_tail();
    } else {
      for (std::uint32_t i = 0; i < n; ++i)
        if (st.next_bernoulli(p)) c.set(i, true);
    }
    return c;
  }

  std::uint32_t size() const { return n_; }
  bool get(std::uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::uint32_t i, bool v) {
    std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(std::uint32_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  // exchange the values at two cells
  void swap_bits(std::uint32_t i, std::uint32_t j) {
    bool bi = get(i), bj = get(j);
    if (bi != bj) {
      set(i, bj);
      set(j, bi);
    }
  }

  std::uint32_t count_open() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : w_) c += __builtin_popcountll(w);
    return static_cast<std::uint32_t>(c);
  }

  const std::vector<std::uint64_t>& words() const { return w_; }

  friend bool operator==(const Config& a, const Config& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

 private:
  void mask_tail() {
    if (n_ % 64 != 0 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::uint32_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

inline Config sample_config(std::uint32_t n, double p, rng::Stream& st) {
  return Config::random(n, p, st);
}

}  // namespace exclab
