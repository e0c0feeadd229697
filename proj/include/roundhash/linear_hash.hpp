#pragma once

#include <cstdint>
#include <stdexcept>

#include "roundhash/prng.hpp"
#include "roundhash/reciprocal.hpp"

namespace roundhash {

// Linear hashing with partial expansions. Buckets form 2^level groups; a
// doubling round takes every group from s0 to 2*s0 buckets one step at a
// time, so bucket loads stay within (s+1)/s of each other, s in [s0, 2*s0).
// The split pointer walks group 0..2^level-1 once per step.
//
// A key's address replays its history from a generator seeded with the key:
// one output per doubling round, reduced to the group's current size with a
// multiply-shift (no modulo). Slots below s0 keep the key where the
// previous round put it; slots at s0 and above are the buckets this round
// appended to the group.
//
// Bucket ids interleave groups: group c of round at level l owns ids
// {j * 2^l + c}, so finished groups split into two aligned groups when the
// next round doubles the group count.
class LinearHasher {
 public:
  explicit LinearHasher(uint32_t s0) : s0_(s0) {
    if (s0 == 0) throw std::invalid_argument("LinearHasher: s0 must be positive");
  }

  uint32_t slack() const { return s0_; }
  uint32_t level() const { return level_; }
  uint64_t split() const { return split_; }
  uint64_t num_buckets() const { return (uint64_t{s0_} << level_) + split_; }

  void grow() {
    if (level_ >= kMaxLevel) throw std::overflow_error("LinearHasher: bucket ceiling reached");
    if (++split_ == uint64_t{s0_} << level_) {
      split_ = 0;
      ++level_;
    }
  }

  void shrink() {
    if (split_ == 0) {
      if (level_ == 0) throw std::logic_error("LinearHasher: already at the initial bucket count");
      --level_;
      split_ = (uint64_t{s0_} << level_) - 1;
    } else {
      --split_;
    }
  }

  uint64_t bucket_of(uint64_t key) const {
    Prng128 rng(key);
    uint64_t b = mul_hi_u64(rng.next(), s0_);
    const uint64_t steps_done = split_ >> level_;
    const uint64_t groups_split = split_ & ((uint64_t{1} << level_) - 1);
    for (uint32_t l = 0; l <= level_; ++l) {
      const uint64_t group = b & ((uint64_t{1} << l) - 1);
      const uint64_t size = l < level_
                                ? 2 * uint64_t{s0_}
                                : uint64_t{s0_} + steps_done + (group < groups_split ? 1 : 0);
      const uint64_t slot = mul_hi_u64(rng.next(), size);
      if (slot >= s0_) b = (slot << l) | group;
    }
    return b;
  }

 private:
  static constexpr uint32_t kMaxLevel = 40;
  uint32_t s0_;
  uint32_t level_ = 0;
  uint64_t split_ = 0;
};

}  // namespace roundhash
