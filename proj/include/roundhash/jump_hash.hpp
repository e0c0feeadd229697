#pragma once

#include <cstdint>
#include <stdexcept>

namespace roundhash {

// Jump consistent hash, kept byte-for-byte compatible with the published
// algorithm (LCG multiplier 2862933555777941757, double-precision step).
// Monotone: when a bucket is added, keys only ever move to the new bucket.
// This is the one hasher here that is allowed a division; baseline fidelity
// beats the division-free rule.
inline uint64_t jump_hash(uint64_t key, uint64_t num_buckets) {
  if (num_buckets == 0) throw std::invalid_argument("jump_hash: need at least one bucket");
  if (num_buckets > uint64_t{1} << 31)
    throw std::invalid_argument("jump_hash: bucket count above the reference range");
  int64_t b = -1;
  int64_t j = 0;
  while (j < static_cast<int64_t>(num_buckets)) {
    b = j;
    key = key * 2862933555777941757ull + 1;
    j = static_cast<int64_t>(
        static_cast<double>(b + 1) *
        (static_cast<double>(int64_t{1} << 31) / static_cast<double>((key >> 33) + 1)));
  }
  return static_cast<uint64_t>(b);
}

}  // namespace roundhash
