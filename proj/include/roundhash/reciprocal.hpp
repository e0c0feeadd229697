#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace roundhash {

inline uint64_t mul_hi_u64(uint64_t a, uint64_t b) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) >> 64);
}

// Divider for a divisor fixed at construction: floor(v / d) with one multiply
// plus shifts. Powers of two collapse to a plain shift; any other d uses the
// rounded-up 65-bit reciprocal 2^64 + magic = ceil(2^(64+k) / d) with
// k = bit_width(d), which is exact for every 64-bit dividend.
class SmallDivider {
 public:
  SmallDivider() = default;

  explicit SmallDivider(uint64_t d) : divisor_(d) {
    if (d == 0) throw std::invalid_argument("SmallDivider: divisor must be positive");
    if (std::has_single_bit(d)) {
      pow2_ = true;
      shift_ = static_cast<uint32_t>(std::countr_zero(d));
    } else {
      pow2_ = false;
      shift_ = static_cast<uint32_t>(std::bit_width(d));
      const auto numerator = static_cast<unsigned __int128>(1) << (64 + shift_);
      magic_ = static_cast<uint64_t>((numerator + d - 1) / d);
    }
    self_check();
  }

  uint64_t divisor() const { return divisor_; }

  uint64_t quot(uint64_t v) const {
    if (pow2_) return v >> shift_;
    const uint64_t t = mul_hi_u64(v, magic_);
    return (t + ((v - t) >> 1)) >> (shift_ - 1);
  }

  uint64_t rem(uint64_t v) const { return v - quot(v) * divisor_; }

 private:
  // Construction-time verification against plain division on boundary
  // dividends; the hot path never divides.
  void self_check() const {
    const uint64_t max = ~uint64_t{0};
    const uint64_t probes[] = {0,
                               1,
                               divisor_ - 1,
                               divisor_,
                               divisor_ + 1,
                               divisor_ * divisor_ - 1,
                               divisor_ * divisor_,
                               max / divisor_,
                               max - divisor_,
                               max};
    for (uint64_t v : probes) {
      if (quot(v) != v / divisor_ || rem(v) != v % divisor_)
        throw std::logic_error("SmallDivider: reciprocal self-check failed");
    }
  }

  uint64_t divisor_ = 1;
  uint64_t magic_ = 0;
  uint32_t shift_ = 0;
  bool pow2_ = true;
};

}  // namespace roundhash
