#pragma once

#include <cstdint>

namespace roundhash {

// splitmix64 finalizer: bijective avalanche mix of a 64-bit word. Constants
// 0x9e3779b97f4a7c15 / 0xbf58476d1ce4e5b9 / 0x94d049bb133111eb, shifts
// 30/27/31.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Two-word xorshift-rotate generator (rotations 24/37, shift 16, output =
// sum of the state words). Seeded by expanding one 64-bit seed through
// mix64 so nearby seeds give unrelated streams.
class Prng128 {
 public:
  explicit Prng128(uint64_t seed)
      : s0_(mix64(seed)), s1_(mix64(seed + 0x9e3779b97f4a7c15ull)) {
    if ((s0_ | s1_) == 0) s1_ = 0x9e3779b97f4a7c15ull;  // all-zero is a fixed point
  }

  uint64_t next() {
    const uint64_t a = s0_;
    uint64_t b = s1_;
    const uint64_t out = a + b;
    b ^= a;
    s0_ = rotl(a, 24) ^ b ^ (b << 16);
    s1_ = rotl(b, 37);
    return out;
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s0_;
  uint64_t s1_;
};

}  // namespace roundhash
